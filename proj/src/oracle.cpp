#include "anq/oracle.hpp"

namespace anq {

std::uint64_t rng64::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("rng64::below: empty range");
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
        v = next();
    } while (v >= limit);
    return v % bound;
}

long long rng64::range(long long lo, long long hi) {
    if (lo > hi) throw std::invalid_argument("rng64::range: empty range");
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

scalar rng64::random_scalar(const field_spec& fs) {
    if (fs.is_prime()) return scalar::from_int(static_cast<long long>(below(fs.modulus())), fs);
    long num = static_cast<long>(range(-4, 4));
    long den = static_cast<long>(range(1, 3));
    return scalar::from_mpq(mpq_class(num, den), fs);
}

matrix rng64::random_matrix(int rows, int cols, const field_spec& fs) {
    matrix m(rows, cols, fs);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = random_scalar(fs);
    return m;
}

matrix rng64::random_invertible(int dim, const field_spec& fs) {
    for (;;) {
        matrix m(dim, dim, fs);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                m(i, j) = fs.is_prime()
                              ? scalar::from_int(static_cast<long long>(below(fs.modulus())), fs)
                              : scalar::from_int(range(-2, 2), fs);
        if (rank(m) == dim) return m;
    }
}

long long hom_dim(const representation& x, const representation& y) {
    if (x.orient() != y.orient())
        throw std::invalid_argument("hom_dim: representations of different quivers");
    if (x.field() != y.field())
        throw std::invalid_argument("hom_dim: representations over different fields");
    const field_spec& fs = x.field();
    int n = x.n();

    // unknowns: entries of phi_v (y.dim(v) x x.dim(v)), vertex by vertex
    std::vector<int> offset(n + 1, 0);
    for (int v = 1; v <= n; ++v) offset[v] = offset[v - 1] + y.dim(v) * x.dim(v);
    int unknowns = offset[n];

    int rows = 0;
    for (int e = 1; e < n; ++e)
        rows += y.dim(x.orient().arrow_target(e)) * x.dim(x.orient().arrow_source(e));

    // one block of equations per edge: y.map(e) * phi_s - phi_t * x.map(e) = 0
    matrix c(rows, unknowns, fs);
    int row = 0;
    for (int e = 1; e < n; ++e) {
        int s = x.orient().arrow_source(e), t = x.orient().arrow_target(e);
        const matrix& mx = x.map(e);
        const matrix& my = y.map(e);
        for (int i = 0; i < y.dim(t); ++i)
            for (int j = 0; j < x.dim(s); ++j) {
                for (int k = 0; k < y.dim(s); ++k)
                    c(row, offset[s - 1] + k * x.dim(s) + j) += my(i, k);
                for (int l = 0; l < x.dim(t); ++l)
                    c(row, offset[t - 1] + i * x.dim(t) + l) -= mx(l, j);
                ++row;
            }
    }
    return unknowns - rank(c);
}

barcode multiplicities_via_hom(const representation& r) {
    int n = r.n();
    const field_spec& fs = r.field();
    std::vector<interval> bars;
    for (int a = 1; a <= n; ++a)
        for (int b = a; b <= n; ++b) bars.push_back({a, b});
    int k = static_cast<int>(bars.size());

    std::vector<representation> thins;
    thins.reserve(bars.size());
    for (interval iv : bars) thins.push_back(thin(r.orient(), iv, fs));

    // Multiplicities solve C m = h with C[i][j] = dim Hom(thin_i, thin_j)
    // and h[i] = dim Hom(thin_i, r); both sides are integers, so the system
    // lives over Q regardless of the coefficient field.
    field_spec q = field_spec::rational();
    matrix c(k, k, q);
    matrix h(k, 1, q);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j)
            c(i, j) = scalar::from_int(hom_dim(thins[i], thins[j]), q);
        h(i, 0) = scalar::from_int(hom_dim(thins[i], r), q);
    }
    if (rank(c) != k)
        throw std::logic_error("multiplicities_via_hom: interval Hom matrix is singular");
    auto m = solve(c, h);
    if (!m) throw std::logic_error("multiplicities_via_hom: inconsistent Hom counts");

    barcode out;
    out.n = n;
    for (int i = 0; i < k; ++i) {
        const mpq_class& v = (*m)(i, 0).fraction();
        if (v.get_den() != 1 || v < 0)
            throw std::logic_error("multiplicities_via_hom: multiplicity of [" +
                                   std::to_string(bars[i].a) + "," + std::to_string(bars[i].b) +
                                   "] is " + v.get_str() + ", not a non-negative integer");
        if (v != 0) out.add(bars[i], v.get_num().get_si());
    }
    return out;
}

std::pair<representation, barcode> plant_instance(const plant_spec& spec) {
    representation plain = sum_of_thins(spec.orient, spec.bars, spec.field);
    rng64 rng(spec.seed);
    std::vector<matrix> p;
    p.reserve(static_cast<std::size_t>(plain.n()));
    for (int v = 1; v <= plain.n(); ++v)
        p.push_back(rng.random_invertible(plain.dim(v), spec.field));
    return {apply_base_change(plain, p), spec.bars};
}

representation random_instance(const orientation& o, int max_dim, const field_spec& fs,
                               std::uint64_t seed) {
    if (max_dim < 0) throw std::invalid_argument("random_instance: negative dimension bound");
    rng64 rng(seed);
    std::vector<int> dims(o.n);
    for (int& d : dims) d = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_dim) + 1));
    std::vector<matrix> maps;
    for (int e = 1; e < o.n; ++e)
        maps.push_back(
            rng.random_matrix(dims[o.arrow_target(e) - 1], dims[o.arrow_source(e) - 1], fs));
    return representation(o, std::move(dims), std::move(maps), fs);
}

}  // namespace anq
