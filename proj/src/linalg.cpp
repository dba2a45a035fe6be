#include "anq/linalg.hpp"

#include <string>

namespace anq {

namespace {

void require_same_field(const matrix& a, const matrix& b, const char* op) {
    if (a.spec() != b.spec())
        throw std::invalid_argument(std::string(op) + ": mixed fields " + a.spec().str() +
                                    " and " + b.spec().str());
}

}  // namespace

matrix::matrix(int rows, int cols, const field_spec& fs)
    : rows_(rows), cols_(cols), spec_(fs),
      ent_(static_cast<std::size_t>(rows) * cols, scalar::zero(fs)) {
    if (rows < 0 || cols < 0)
        throw std::invalid_argument("matrix: negative dimension");
}

matrix matrix::identity(int n, const field_spec& fs) {
    matrix m(n, n, fs);
    for (int i = 0; i < n; ++i) m(i, i) = scalar::one(fs);
    return m;
}

matrix matrix::column(int j) const {
    matrix c(rows_, 1, spec_);
    for (int i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
}

bool matrix::is_zero() const {
    for (const auto& e : ent_)
        if (!e.is_zero()) return false;
    return true;
}

bool matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            if (i == j && !(*this)(i, j).is_one()) return false;
            if (i != j && !(*this)(i, j).is_zero()) return false;
        }
    return true;
}

bool operator==(const matrix& a, const matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.spec_ == b.spec_ && a.ent_ == b.ent_;
}

std::ostream& operator<<(std::ostream& os, const matrix& m) {
    os << m.rows() << "x" << m.cols() << " over " << m.spec().str() << " [";
    for (int i = 0; i < m.rows(); ++i) {
        if (i) os << "; ";
        for (int j = 0; j < m.cols(); ++j) {
            if (j) os << " ";
            os << m(i, j).str();
        }
    }
    return os << "]";
}

matrix operator*(const matrix& a, const matrix& b) {
    require_same_field(a, b, "operator*");
    if (a.cols() != b.rows())
        throw std::invalid_argument("operator*: shape mismatch " + std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()) + " times " + std::to_string(b.rows()) +
                                    "x" + std::to_string(b.cols()));
    matrix c(a.rows(), b.cols(), a.spec());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const scalar& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < b.cols(); ++j) {
                const scalar& bkj = b(k, j);
                if (!bkj.is_zero()) c(i, j) += aik * bkj;
            }
        }
    return c;
}

matrix operator+(const matrix& a, const matrix& b) {
    require_same_field(a, b, "operator+");
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("operator+: shape mismatch");
    matrix c = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
    return c;
}

matrix operator-(const matrix& a, const matrix& b) {
    require_same_field(a, b, "operator-");
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("operator-: shape mismatch");
    matrix c = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
    return c;
}

matrix transpose(const matrix& m) {
    matrix t(m.cols(), m.rows(), m.spec());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

matrix hcat(const matrix& a, const matrix& b) {
    require_same_field(a, b, "hcat");
    if (a.rows() != b.rows())
        throw std::invalid_argument("hcat: row mismatch " + std::to_string(a.rows()) + " vs " +
                                    std::to_string(b.rows()));
    matrix c(a.rows(), a.cols() + b.cols(), a.spec());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
        for (int j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

matrix take_columns(const matrix& m, const std::vector<int>& idx) {
    matrix c(m.rows(), static_cast<int>(idx.size()), m.spec());
    for (int j = 0; j < c.cols(); ++j) {
        if (idx[j] < 0 || idx[j] >= m.cols())
            throw std::invalid_argument("take_columns: index out of range");
        for (int i = 0; i < m.rows(); ++i) c(i, j) = m(i, idx[j]);
    }
    return c;
}

rref_result rref(const matrix& m) {
    rref_result out{m, {}, matrix::identity(m.rows(), m.spec())};
    matrix& r = out.r;
    matrix& t = out.t;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int piv = -1;
        for (int i = row; i < m.rows(); ++i)
            if (!r(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < m.cols() || j < m.rows(); ++j) {
                if (j < m.cols()) std::swap(r(row, j), r(piv, j));
                if (j < m.rows()) std::swap(t(row, j), t(piv, j));
            }
        scalar s = r(row, col).inv();
        for (int j = col; j < m.cols(); ++j) r(row, j) *= s;
        for (int j = 0; j < m.rows(); ++j) t(row, j) *= s;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || r(i, col).is_zero()) continue;
            scalar f = r(i, col);
            for (int j = col; j < m.cols(); ++j) r(i, j) -= f * r(row, j);
            for (int j = 0; j < m.rows(); ++j) t(i, j) -= f * t(row, j);
        }
        out.pivots.push_back(col);
        ++row;
    }
    return out;
}

int rank(const matrix& m) {
    matrix r = m;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int piv = -1;
        for (int i = row; i < m.rows(); ++i)
            if (!r(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = col; j < m.cols(); ++j) std::swap(r(row, j), r(piv, j));
        scalar s = r(row, col).inv();
        for (int i = row + 1; i < m.rows(); ++i) {
            if (r(i, col).is_zero()) continue;
            scalar f = r(i, col) * s;
            for (int j = col; j < m.cols(); ++j) r(i, j) -= f * r(row, j);
        }
        ++row;
    }
    return row;
}

subspace::subspace(matrix basis) : basis_(std::move(basis)) {
    if (rank(basis_) != basis_.cols())
        throw std::invalid_argument("subspace: columns are linearly dependent");
}

subspace subspace::zero(int ambient_dim, const field_spec& fs) {
    return subspace(matrix(ambient_dim, 0, fs));
}

subspace subspace::full(int ambient_dim, const field_spec& fs) {
    return subspace(matrix::identity(ambient_dim, fs));
}

bool subspace::contains(const matrix& vec) const {
    if (vec.rows() != ambient_dim() || vec.cols() != 1)
        throw std::invalid_argument("subspace::contains: expected an ambient column vector");
    return rank(hcat(basis_, vec)) == dim();
}

subspace kernel_basis(const matrix& m) {
    rref_result rr = rref(m);
    int rk = static_cast<int>(rr.pivots.size());
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : rr.pivots) is_pivot[p] = true;
    matrix k(m.cols(), m.cols() - rk, m.spec());
    int out = 0;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        k(f, out) = scalar::one(m.spec());
        for (int j = 0; j < rk; ++j) k(rr.pivots[j], out) = -rr.r(j, f);
        ++out;
    }
    return subspace(std::move(k));
}

subspace image_basis(const matrix& m) {
    return subspace(take_columns(m, rref(m).pivots));
}

namespace {

/// Appends to `base` those columns of `cand` that enlarge its span, in
/// order; returns the appended columns.
matrix greedy_extend(matrix& base, const matrix& cand) {
    std::vector<int> taken;
    int rk = rank(base);
    for (int j = 0; j < cand.cols(); ++j) {
        matrix trial = hcat(base, cand.column(j));
        if (rank(trial) > rk) {
            base = std::move(trial);
            ++rk;
            taken.push_back(j);
        }
    }
    return take_columns(cand, taken);
}

}  // namespace

matrix extend_to_basis(const subspace& s) {
    matrix base = s.basis();
    greedy_extend(base, matrix::identity(s.ambient_dim(), s.spec()));
    return base;
}

matrix partitioned_basis::concat() const {
    return hcat(hcat(both, first), hcat(second, neither));
}

partitioned_basis compatible_basis_two_subspaces(const subspace& u1, const subspace& u2) {
    if (u1.ambient_dim() != u2.ambient_dim() || u1.spec() != u2.spec())
        throw std::invalid_argument("compatible_basis_two_subspaces: subspaces of different spaces");
    const field_spec& fs = u1.spec();
    int d = u1.ambient_dim();

    // u1.basis * x + u2.basis * y = 0 parametrizes the intersection
    subspace rel = kernel_basis(hcat(u1.basis(), u2.basis()));
    matrix head(u1.dim(), rel.dim(), fs);
    for (int i = 0; i < head.rows(); ++i)
        for (int j = 0; j < head.cols(); ++j) head(i, j) = rel.basis()(i, j);
    matrix both = u1.basis() * head;

    matrix span1 = both;
    matrix first = greedy_extend(span1, u1.basis());
    matrix span2 = both;
    matrix second = greedy_extend(span2, u2.basis());

    matrix all = hcat(hcat(both, first), second);
    matrix neither = greedy_extend(all, matrix::identity(d, fs));
    return partitioned_basis{std::move(both), std::move(first), std::move(second),
                             std::move(neither)};
}

std::optional<matrix> try_inverse(const matrix& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    rref_result rr = rref(a);
    if (static_cast<int>(rr.pivots.size()) != a.cols()) return std::nullopt;
    return rr.t;
}

matrix inverse(const matrix& a) {
    auto inv = try_inverse(a);
    if (!inv)
        throw std::invalid_argument("inverse: matrix " + std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()) + " is not invertible");
    return *inv;
}

std::optional<matrix> solve(const matrix& a, const matrix& b) {
    require_same_field(a, b, "solve");
    if (a.rows() != b.rows())
        throw std::invalid_argument("solve: row mismatch " + std::to_string(a.rows()) + " vs " +
                                    std::to_string(b.rows()));
    rref_result rr = rref(a);
    int rk = static_cast<int>(rr.pivots.size());
    matrix y = rr.t * b;
    for (int i = rk; i < y.rows(); ++i)
        for (int j = 0; j < y.cols(); ++j)
            if (!y(i, j).is_zero()) return std::nullopt;
    matrix x(a.cols(), b.cols(), a.spec());
    for (int i = 0; i < rk; ++i)
        for (int j = 0; j < b.cols(); ++j) x(rr.pivots[i], j) = y(i, j);
    return x;
}

}  // namespace anq
