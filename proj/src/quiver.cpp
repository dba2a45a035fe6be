#include "anq/quiver.hpp"

#include <algorithm>
#include <string>

namespace anq {

orientation::orientation(int n_, std::vector<arrow_dir> dirs_) : n(n_), dirs(std::move(dirs_)) {
    if (n < 1)
        throw std::invalid_argument("orientation: need at least one vertex, got n=" +
                                    std::to_string(n));
    if (static_cast<int>(dirs.size()) != n - 1)
        throw std::invalid_argument("orientation: n=" + std::to_string(n) + " needs " +
                                    std::to_string(n - 1) + " arrows, got " +
                                    std::to_string(dirs.size()));
}

std::string orientation::str() const {
    std::string s;
    for (arrow_dir d : dirs) s += (d == arrow_dir::forward ? 'f' : 'b');
    return s;
}

orientation orientation::parse(int n, const std::string& text) {
    std::vector<arrow_dir> dirs;
    for (char c : text) {
        if (c == 'f')
            dirs.push_back(arrow_dir::forward);
        else if (c == 'b')
            dirs.push_back(arrow_dir::backward);
        else
            throw std::invalid_argument("orientation: bad arrow character '" + std::string(1, c) +
                                        "' (want 'f' or 'b')");
    }
    return orientation(n, std::move(dirs));
}

orientation reversed(const orientation& o) {
    std::vector<arrow_dir> dirs(o.dirs.rbegin(), o.dirs.rend());
    for (arrow_dir& d : dirs)
        d = (d == arrow_dir::forward ? arrow_dir::backward : arrow_dir::forward);
    return orientation(o.n, std::move(dirs));
}

std::ostream& operator<<(std::ostream& os, const interval& iv) {
    return os << "[" << iv.a << "," << iv.b << "]";
}

void barcode::add(interval iv, long long mult) {
    if (iv.a < 1 || iv.a > iv.b || iv.b > n)
        throw std::invalid_argument("barcode: interval [" + std::to_string(iv.a) + "," +
                                    std::to_string(iv.b) + "] does not fit in 1.." +
                                    std::to_string(n));
    if (mult <= 0)
        throw std::invalid_argument("barcode: multiplicity must be positive");
    items[iv] += mult;
}

long long barcode::total_multiplicity() const {
    long long t = 0;
    for (const auto& [iv, m] : items) t += m;
    return t;
}

long long barcode::dim_at(int x) const {
    long long t = 0;
    for (const auto& [iv, m] : items)
        if (iv.contains(x)) t += m;
    return t;
}

std::ostream& operator<<(std::ostream& os, const barcode& bc) {
    os << "{n=" << bc.n;
    for (const auto& [iv, m] : bc.items) os << " " << iv << ":" << m;
    return os << "}";
}

barcode barcode_sum(const barcode& x, const barcode& y) {
    if (x.n != y.n) throw std::invalid_argument("barcode_sum: different quiver sizes");
    barcode out = x;
    for (const auto& [iv, m] : y.items) out.add(iv, m);
    return out;
}

barcode barcode_mirror(const barcode& bc) {
    barcode out;
    out.n = bc.n;
    for (const auto& [iv, m] : bc.items) out.add({bc.n + 1 - iv.b, bc.n + 1 - iv.a}, m);
    return out;
}

representation::representation(orientation o, std::vector<int> dims, std::vector<matrix> maps,
                               field_spec fs)
    : orient_(std::move(o)), field_(fs), dims_(std::move(dims)), maps_(std::move(maps)) {
    if (static_cast<int>(dims_.size()) != orient_.n)
        throw std::invalid_argument("representation: expected " + std::to_string(orient_.n) +
                                    " dimensions, got " + std::to_string(dims_.size()));
    for (int d : dims_)
        if (d < 0) throw std::invalid_argument("representation: negative dimension");
    if (static_cast<int>(maps_.size()) != orient_.n - 1)
        throw std::invalid_argument("representation: expected " + std::to_string(orient_.n - 1) +
                                    " edge maps, got " + std::to_string(maps_.size()));
    for (int e = 1; e < orient_.n; ++e) {
        const matrix& m = map(e);
        int ds = dim(orient_.arrow_source(e));
        int dt = dim(orient_.arrow_target(e));
        if (m.rows() != dt || m.cols() != ds)
            throw std::invalid_argument("representation: edge " + std::to_string(e) +
                                        " map has shape " + std::to_string(m.rows()) + "x" +
                                        std::to_string(m.cols()) + ", want " + std::to_string(dt) +
                                        "x" + std::to_string(ds));
        if (m.spec() != field_)
            throw std::invalid_argument("representation: edge " + std::to_string(e) +
                                        " map is over " + m.spec().str() + ", want " +
                                        field_.str());
    }
}

long long representation::total_dim() const {
    long long t = 0;
    for (int d : dims_) t += d;
    return t;
}

representation thin(const orientation& o, interval iv, const field_spec& fs) {
    barcode bc;
    bc.n = o.n;
    bc.add(iv);
    return sum_of_thins(o, bc, fs);
}

representation sum_of_thins(const orientation& o, const barcode& bc, const field_spec& fs) {
    if (bc.n != o.n) throw std::invalid_argument("sum_of_thins: barcode size mismatch");
    std::vector<interval> bars;
    for (const auto& [iv, m] : bc.items)
        for (long long k = 0; k < m; ++k) bars.push_back(iv);

    std::vector<int> dims(o.n, 0);
    std::vector<std::vector<int>> slot(o.n);  // vertex -> bar indices alive there, in order
    for (std::size_t s = 0; s < bars.size(); ++s)
        for (int x = bars[s].a; x <= bars[s].b; ++x) {
            slot[x - 1].push_back(static_cast<int>(s));
            ++dims[x - 1];
        }

    std::vector<matrix> maps;
    for (int e = 1; e < o.n; ++e) {
        int vs = o.arrow_source(e), vt = o.arrow_target(e);
        matrix m(dims[vt - 1], dims[vs - 1], fs);
        for (int j = 0; j < dims[vs - 1]; ++j) {
            int bar = slot[vs - 1][j];
            auto& at_t = slot[vt - 1];
            auto it = std::find(at_t.begin(), at_t.end(), bar);
            if (it != at_t.end()) m(static_cast<int>(it - at_t.begin()), j) = scalar::one(fs);
        }
        maps.push_back(std::move(m));
    }
    return representation(o, std::move(dims), std::move(maps), fs);
}

representation direct_sum(const representation& x, const representation& y) {
    if (x.orient() != y.orient() || x.field() != y.field())
        throw std::invalid_argument("direct_sum: incompatible representations");
    int n = x.n();
    std::vector<int> dims(n);
    for (int v = 1; v <= n; ++v) dims[v - 1] = x.dim(v) + y.dim(v);
    std::vector<matrix> maps;
    for (int e = 1; e < n; ++e) {
        const matrix& a = x.map(e);
        const matrix& b = y.map(e);
        matrix m(a.rows() + b.rows(), a.cols() + b.cols(), x.field());
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
        maps.push_back(std::move(m));
    }
    return representation(x.orient(), std::move(dims), std::move(maps), x.field());
}

representation apply_base_change(const representation& r, const std::vector<matrix>& p) {
    if (static_cast<int>(p.size()) != r.n())
        throw std::invalid_argument("apply_base_change: expected one matrix per vertex");
    std::vector<matrix> inv;
    inv.reserve(p.size());
    for (int x = 1; x <= r.n(); ++x) {
        const matrix& px = p[static_cast<std::size_t>(x) - 1];
        if (px.rows() != r.dim(x) || px.cols() != r.dim(x))
            throw std::invalid_argument("apply_base_change: matrix at vertex " + std::to_string(x) +
                                        " is not " + std::to_string(r.dim(x)) + "x" +
                                        std::to_string(r.dim(x)));
        auto i = try_inverse(px);
        if (!i)
            throw std::invalid_argument("apply_base_change: matrix at vertex " + std::to_string(x) +
                                        " is singular");
        inv.push_back(std::move(*i));
    }
    std::vector<matrix> maps;
    for (int e = 1; e < r.n(); ++e) {
        int vs = r.orient().arrow_source(e), vt = r.orient().arrow_target(e);
        maps.push_back(inv[vt - 1] * r.map(e) * p[vs - 1]);
    }
    return representation(r.orient(), r.dims(), std::move(maps), r.field());
}

representation restrict(const representation& r, int lo, int hi) {
    if (lo < 1 || lo > hi || hi > r.n())
        throw std::invalid_argument("restrict: bad window [" + std::to_string(lo) + "," +
                                    std::to_string(hi) + "] in 1.." + std::to_string(r.n()));
    std::vector<arrow_dir> dirs(r.orient().dirs.begin() + (lo - 1),
                                r.orient().dirs.begin() + (hi - 1));
    std::vector<int> dims(r.dims().begin() + (lo - 1), r.dims().begin() + hi);
    std::vector<matrix> maps;
    for (int e = lo; e < hi; ++e) maps.push_back(r.map(e));
    return representation(orientation(hi - lo + 1, std::move(dirs)), std::move(dims),
                          std::move(maps), r.field());
}

representation reverse(const representation& r) {
    int n = r.n();
    std::vector<int> dims(r.dims().rbegin(), r.dims().rend());
    std::vector<matrix> maps;
    for (int e = n - 1; e >= 1; --e) maps.push_back(r.map(e));
    return representation(reversed(r.orient()), std::move(dims), std::move(maps), r.field());
}

bool is_peak(const representation& r, int x) {
    if (x < 1 || x > r.n())
        throw std::invalid_argument("is_peak: vertex " + std::to_string(x) + " out of range");
    for (int e = 1; e < r.n(); ++e) {
        int s = r.orient().arrow_source(e), t = r.orient().arrow_target(e);
        const matrix& m = r.map(e);
        if (std::abs(x - t) < std::abs(x - s)) {
            if (rank(m) != m.cols()) return false;  // toward x but not injective
        } else {
            if (rank(m) != m.rows()) return false;  // away from x but not surjective
        }
    }
    return true;
}

representation subrepresentation(const representation& r, const std::vector<subspace>& spaces) {
    if (static_cast<int>(spaces.size()) != r.n())
        throw std::invalid_argument("subrepresentation: expected one subspace per vertex");
    std::vector<int> dims(r.n());
    for (int x = 1; x <= r.n(); ++x) {
        const subspace& s = spaces[static_cast<std::size_t>(x) - 1];
        if (s.ambient_dim() != r.dim(x) || s.spec() != r.field())
            throw std::invalid_argument("subrepresentation: subspace at vertex " +
                                        std::to_string(x) + " does not live in the fiber");
        dims[x - 1] = s.dim();
    }
    std::vector<matrix> maps;
    for (int e = 1; e < r.n(); ++e) {
        int vs = r.orient().arrow_source(e), vt = r.orient().arrow_target(e);
        auto x = solve(spaces[vt - 1].basis(), r.map(e) * spaces[vs - 1].basis());
        if (!x)
            throw std::invalid_argument("subrepresentation: spaces are not invariant under edge " +
                                        std::to_string(e));
        maps.push_back(std::move(*x));
    }
    return representation(r.orient(), std::move(dims), std::move(maps), r.field());
}

}  // namespace anq
