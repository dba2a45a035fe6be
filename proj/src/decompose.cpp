#include "anq/decompose.hpp"

#include <algorithm>
#include <map>

namespace anq {

namespace {

/// A summand under construction: its interval and, for every vertex it
/// touches, the spanning column written in the coordinates of the ambient
/// representation (cols[k] belongs to vertex iv.a + k).
struct draft {
    interval iv;
    std::vector<matrix> cols;
};

void shift_drafts(std::vector<draft>& ds, int delta) {
    for (auto& d : ds) {
        d.iv.a += delta;
        d.iv.b += delta;
    }
}

std::vector<draft> single_vertex_drafts(const representation& r) {
    std::vector<draft> out;
    for (int j = 0; j < r.dim(1); ++j) {
        matrix e(r.dim(1), 1, r.field());
        e(j, 0) = scalar::one(r.field());
        out.push_back({{1, 1}, {std::move(e)}});
    }
    return out;
}

/// Kernel, paired image, and cokernel summands of a single edge.
std::vector<draft> linmap_drafts(const representation& r) {
    const matrix& f = r.map(1);
    std::vector<draft> out;
    if (r.orient().dir(1) == arrow_dir::forward) {
        subspace ker = kernel_basis(f);
        matrix v1 = extend_to_basis(ker);
        for (int j = 0; j < ker.dim(); ++j) out.push_back({{1, 1}, {v1.column(j)}});
        std::vector<int> rest;
        for (int j = ker.dim(); j < v1.cols(); ++j) rest.push_back(j);
        matrix src = take_columns(v1, rest);
        matrix img = f * src;
        for (int j = 0; j < src.cols(); ++j)
            out.push_back({{1, 2}, {src.column(j), img.column(j)}});
        matrix v2 = extend_to_basis(subspace(img));
        for (int j = img.cols(); j < v2.cols(); ++j) out.push_back({{2, 2}, {v2.column(j)}});
    } else {
        subspace ker = kernel_basis(f);
        matrix v2 = extend_to_basis(ker);
        for (int j = 0; j < ker.dim(); ++j) out.push_back({{2, 2}, {v2.column(j)}});
        std::vector<int> rest;
        for (int j = ker.dim(); j < v2.cols(); ++j) rest.push_back(j);
        matrix src = take_columns(v2, rest);
        matrix img = f * src;
        for (int j = 0; j < src.cols(); ++j)
            out.push_back({{1, 2}, {img.column(j), src.column(j)}});
        matrix v1 = extend_to_basis(subspace(img));
        for (int j = img.cols(); j < v1.cols(); ++j) out.push_back({{1, 1}, {v1.column(j)}});
    }
    return out;
}

matrix solve_or_die(const matrix& basis, const matrix& vecs, const char* where) {
    auto x = solve(basis, vecs);
    if (!x)
        throw std::logic_error(std::string(where) +
                               ": vectors left the tracked subspace; decomposition invariant broken");
    return std::move(*x);
}

/// Interval summands of a three-vertex representation with a peak in the
/// middle, via a basis compatible with two distinguished subspaces of the
/// middle fiber. Each orientation of the outer arrows picks its own pair
/// of subspaces; the opposite-pointing pair reduces to the first by
/// turning the quiver around.
std::vector<draft> a3_drafts(const representation& r) {
    bool fwd1 = r.orient().dir(1) == arrow_dir::forward;
    bool fwd2 = r.orient().dir(2) == arrow_dir::forward;
    const matrix& alpha = r.map(1);
    const matrix& beta = r.map(2);
    std::vector<draft> out;

    if (fwd1 && !fwd2) {
        // both arrows point inward and are injective
        partitioned_basis pb =
            compatible_basis_two_subspaces(image_basis(alpha), image_basis(beta));
        for (int j = 0; j < pb.both.cols(); ++j) {
            matrix c = pb.both.column(j);
            out.push_back({{1, 3},
                           {solve_or_die(alpha, c, "a3 case both-in"), c,
                            solve_or_die(beta, c, "a3 case both-in")}});
        }
        for (int j = 0; j < pb.first.cols(); ++j) {
            matrix c = pb.first.column(j);
            out.push_back({{1, 2}, {solve_or_die(alpha, c, "a3 case both-in"), c}});
        }
        for (int j = 0; j < pb.second.cols(); ++j) {
            matrix c = pb.second.column(j);
            out.push_back({{2, 3}, {c, solve_or_die(beta, c, "a3 case both-in")}});
        }
        for (int j = 0; j < pb.neither.cols(); ++j)
            out.push_back({{2, 2}, {pb.neither.column(j)}});
    } else if (fwd1 && fwd2) {
        // flow-through: the first arrow is injective, the second surjective
        partitioned_basis pb =
            compatible_basis_two_subspaces(image_basis(alpha), kernel_basis(beta));
        for (int j = 0; j < pb.both.cols(); ++j) {
            matrix c = pb.both.column(j);
            out.push_back({{1, 2}, {solve_or_die(alpha, c, "a3 case flow"), c}});
        }
        for (int j = 0; j < pb.first.cols(); ++j) {
            matrix c = pb.first.column(j);
            out.push_back({{1, 3}, {solve_or_die(alpha, c, "a3 case flow"), c, beta * c}});
        }
        for (int j = 0; j < pb.second.cols(); ++j)
            out.push_back({{2, 2}, {pb.second.column(j)}});
        for (int j = 0; j < pb.neither.cols(); ++j) {
            matrix c = pb.neither.column(j);
            out.push_back({{2, 3}, {c, beta * c}});
        }
    } else if (!fwd1 && fwd2) {
        // both arrows point outward and are surjective
        partitioned_basis pb =
            compatible_basis_two_subspaces(kernel_basis(alpha), kernel_basis(beta));
        for (int j = 0; j < pb.both.cols(); ++j)
            out.push_back({{2, 2}, {pb.both.column(j)}});
        for (int j = 0; j < pb.first.cols(); ++j) {
            matrix c = pb.first.column(j);
            out.push_back({{2, 3}, {c, beta * c}});
        }
        for (int j = 0; j < pb.second.cols(); ++j) {
            matrix c = pb.second.column(j);
            out.push_back({{1, 2}, {alpha * c, c}});
        }
        for (int j = 0; j < pb.neither.cols(); ++j) {
            matrix c = pb.neither.column(j);
            out.push_back({{1, 3}, {alpha * c, c, beta * c}});
        }
    } else {
        // mirror of the flow-through case
        std::vector<draft> rev = a3_drafts(reverse(r));
        for (auto& d : rev) {
            std::reverse(d.cols.begin(), d.cols.end());
            out.push_back({{4 - d.iv.b, 4 - d.iv.a}, std::move(d.cols)});
        }
    }
    return out;
}

/// 0/1 matching matrix: entry (i, j) is 1 when at_t[i] and at_s[j] name
/// the same summand.
matrix routing_matrix(const std::vector<int>& at_t, const std::vector<int>& at_s,
                      const field_spec& fs) {
    matrix m(static_cast<int>(at_t.size()), static_cast<int>(at_s.size()), fs);
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i)
            if (at_t[i] == at_s[j]) m(i, j) = scalar::one(fs);
    return m;
}

std::vector<draft> attach_left(const representation& w, std::vector<draft> right);

/// Decomposes a representation with a peak at vertex 2 whose restriction
/// to [2, n] is already written in summand coordinates: column j of fiber
/// y >= 2 (among the bars alive at y) belongs to the bar [2, deaths[j]].
/// Splits off the far end, collapses the invertible middle down to three
/// vertices, and solves that case directly.
std::vector<draft> decompose_peak2(const representation& v, const std::vector<int>& deaths) {
    int m = v.n();
    const field_spec& fs = v.field();
    if (m == 3) return a3_drafts(v);

    auto alive_at = [&](int y) {
        std::vector<int> idx;
        for (int j = 0; j < static_cast<int>(deaths.size()); ++j)
            if (deaths[j] >= y) idx.push_back(j);
        return idx;
    };

    // the window [1, m-1] keeps the same bar layout, clipped at m-1
    std::vector<draft> clip;
    for (int j = 0; j < static_cast<int>(deaths.size()); ++j) {
        int death = std::min(deaths[j], m - 1);
        draft d{{2, death}, {}};
        for (int y = 2; y <= death; ++y) {
            auto alive = alive_at(y);
            matrix e(static_cast<int>(alive.size()), 1, fs);
            auto pos = std::find(alive.begin(), alive.end(), j) - alive.begin();
            e(static_cast<int>(pos), 0) = scalar::one(fs);
            d.cols.push_back(std::move(e));
        }
        clip.push_back(std::move(d));
    }
    std::vector<draft> lsub = attach_left(restrict(v, 1, m - 1), std::move(clip));

    std::vector<draft> rsub = linmap_drafts(restrict(v, m - 1, m));
    shift_drafts(rsub, m - 2);

    std::vector<draft> bprime, cpart;
    for (auto& d : lsub) (d.iv.b == m - 1 ? bprime : cpart).push_back(std::move(d));
    std::vector<draft> pairs, epart;
    for (auto& d : rsub) {
        if (d.iv == interval{m - 1, m})
            pairs.push_back(std::move(d));
        else if (d.iv == interval{m, m})
            epart.push_back(std::move(d));
        // bars [m-1, m-1] of the end window are spanned again by bprime
    }

    // glued representation of the bars through m-1, in the bases
    // e[y] = bprime columns (y <= m-1), e[m] = pair columns at m
    std::vector<matrix> e(m + 1, matrix(0, 0, fs));
    std::vector<std::vector<int>> ids(m + 1);
    for (int y = 1; y <= m - 1; ++y) {
        e[y] = matrix(v.dim(y), 0, fs);
        for (int i = 0; i < static_cast<int>(bprime.size()); ++i)
            if (bprime[i].iv.contains(y)) {
                e[y] = hcat(e[y], bprime[i].cols[y - bprime[i].iv.a]);
                ids[y].push_back(i);
            }
    }
    e[m] = matrix(v.dim(m), 0, fs);
    for (auto& p : pairs) e[m] = hcat(e[m], p.cols.back());

    std::vector<int> dims2(m);
    for (int y = 1; y <= m; ++y) dims2[y - 1] = e[y].cols();
    std::vector<matrix> maps2;
    for (int edge = 1; edge < m; ++edge) {
        int s = v.orient().arrow_source(edge), t = v.orient().arrow_target(edge);
        if (edge <= m - 2)
            maps2.push_back(routing_matrix(ids[t], ids[s], fs));
        else
            maps2.push_back(solve_or_die(e[t], v.map(edge) * e[s], "glue at far end"));
    }
    representation b2(v.orient(), std::move(dims2), std::move(maps2), fs);

    auto [a3, transport] = collapse_middle(b2);
    std::vector<matrix> back;
    back.reserve(transport.size());
    for (const auto& t : transport) back.push_back(inverse(t));

    std::vector<draft> out;
    for (auto& d : a3_drafts(a3)) {
        // un-collapse: middle vertex 2 stands for the run 2..m-1, so
        // [1,1]->[1,1], [2,2]->[2,m-1], [3,3]->[m,m] and likewise for the
        // longer bars
        interval global{d.iv.a == 3 ? m : d.iv.a,
                        d.iv.b == 1 ? 1 : (d.iv.b == 2 ? m - 1 : m)};
        draft lifted{global, {}};
        for (int y = global.a; y <= global.b; ++y) {
            matrix col(0, 0, fs);
            if (y == 1)
                col = d.cols.front();
            else if (y == m)
                col = d.cols.back();
            else
                col = back[y - 2] * d.cols[2 - d.iv.a];
            lifted.cols.push_back(e[y] * col);
        }
        out.push_back(std::move(lifted));
    }
    for (auto& d : cpart) out.push_back(std::move(d));
    for (auto& d : epart) out.push_back(std::move(d));
    return out;
}

/// Extends a decomposition of w restricted to [2, n] (given in the fibers
/// of w) to a decomposition of all of w, by splitting at vertex 2.
std::vector<draft> attach_left(const representation& w, std::vector<draft> right) {
    int m = w.n();
    const field_spec& fs = w.field();
    if (m == 2) return linmap_drafts(w);

    std::vector<draft> lft = linmap_drafts(restrict(w, 1, 2));
    std::vector<draft> b12, cpart;
    for (auto& d : lft) {
        if (d.iv == interval{1, 2})
            b12.push_back(std::move(d));
        else if (d.iv == interval{1, 1})
            cpart.push_back(std::move(d));
        // bars [2, 2] of the left window are spanned again by `right`
    }
    std::vector<draft> bsec, dpart;
    for (auto& d : right) (d.iv.a == 2 ? bsec : dpart).push_back(std::move(d));

    // bases of the part made of bars through vertex 2:
    // vertex 1 from the paired columns, vertices >= 2 from `right`
    std::vector<int> deaths;
    for (const auto& d : bsec) deaths.push_back(d.iv.b);
    std::vector<matrix> e(m + 1, matrix(0, 0, fs));
    e[1] = matrix(w.dim(1), 0, fs);
    for (const auto& d : b12) e[1] = hcat(e[1], d.cols.front());
    for (int y = 2; y <= m; ++y) {
        e[y] = matrix(w.dim(y), 0, fs);
        for (const auto& d : bsec)
            if (d.iv.contains(y)) e[y] = hcat(e[y], d.cols[y - 2]);
    }

    std::vector<int> dims1(m);
    for (int y = 1; y <= m; ++y) dims1[y - 1] = e[y].cols();
    std::vector<matrix> maps1;
    for (int edge = 1; edge < m; ++edge) {
        int s = w.orient().arrow_source(edge), t = w.orient().arrow_target(edge);
        if (edge == 1) {
            maps1.push_back(solve_or_die(e[t], w.map(1) * e[s], "glue at vertex 2"));
        } else {
            std::vector<int> at_s, at_t;
            for (int j = 0; j < static_cast<int>(bsec.size()); ++j) {
                if (bsec[j].iv.contains(s)) at_s.push_back(j);
                if (bsec[j].iv.contains(t)) at_t.push_back(j);
            }
            maps1.push_back(routing_matrix(at_t, at_s, fs));
        }
    }
    representation b1(w.orient(), std::move(dims1), std::move(maps1), fs);

    std::vector<draft> out;
    for (auto& d : decompose_peak2(b1, deaths)) {
        draft lifted{d.iv, {}};
        for (int y = d.iv.a; y <= d.iv.b; ++y)
            lifted.cols.push_back(e[y] * d.cols[y - d.iv.a]);
        out.push_back(std::move(lifted));
    }
    for (auto& d : cpart) out.push_back(std::move(d));
    for (auto& d : dpart) out.push_back(std::move(d));
    return out;
}

std::vector<draft> decompose_drafts(const representation& r) {
    int n = r.n();
    if (n == 1) return single_vertex_drafts(r);
    if (n == 2) return linmap_drafts(r);
    std::vector<draft> right = decompose_drafts(restrict(r, 2, n));
    shift_drafts(right, 1);
    return attach_left(r, std::move(right));
}

decomposition assemble(const representation& r, std::vector<draft> drafts) {
    std::stable_sort(drafts.begin(), drafts.end(),
                     [](const draft& x, const draft& y) { return x.iv < y.iv; });
    int n = r.n();
    decomposition d;
    d.bars.n = n;
    std::vector<int> cursor(n, 0);
    for (int x = 1; x <= n; ++x) {
        d.base_change.emplace_back(r.dim(x), r.dim(x), r.field());
        d.column_tags.emplace_back();
    }
    for (int id = 0; id < static_cast<int>(drafts.size()); ++id) {
        const draft& dr = drafts[id];
        d.summands.push_back({id, dr.iv});
        d.bars.add(dr.iv);
        for (int y = dr.iv.a; y <= dr.iv.b; ++y) {
            const matrix& col = dr.cols[y - dr.iv.a];
            if (col.rows() != r.dim(y) || col.cols() != 1)
                throw std::logic_error("assemble: summand column has the wrong shape");
            int slot = cursor[y - 1]++;
            if (slot >= r.dim(y))
                throw std::logic_error("assemble: too many summand columns at a vertex");
            for (int i = 0; i < col.rows(); ++i) d.base_change[y - 1](i, slot) = col(i, 0);
            d.column_tags[y - 1].push_back(id);
        }
    }
    for (int x = 1; x <= n; ++x)
        if (cursor[x - 1] != r.dim(x))
            throw std::logic_error("assemble: summand columns do not fill vertex " +
                                   std::to_string(x));
    return d;
}

}  // namespace

decomposition decompose(const representation& r) {
    return assemble(r, decompose_drafts(r));
}

decomposition decompose_linear_map(const representation& r) {
    if (r.n() != 2)
        throw std::invalid_argument("decompose_linear_map: need exactly two vertices, got n=" +
                                    std::to_string(r.n()));
    return assemble(r, linmap_drafts(r));
}

decomposition decompose_a3_peak(const representation& r) {
    if (r.n() != 3)
        throw std::invalid_argument("decompose_a3_peak: need exactly three vertices, got n=" +
                                    std::to_string(r.n()));
    if (!is_peak(r, 2))
        throw std::invalid_argument("decompose_a3_peak: vertex 2 is not a peak");
    return assemble(r, a3_drafts(r));
}

peak_split_result peak_split(const representation& r, int x) {
    if (x <= 1 || x >= r.n())
        throw std::invalid_argument("peak_split: vertex " + std::to_string(x) +
                                    " is not interior");
    decomposition dl = decompose(restrict(r, 1, x));
    decomposition dr = decompose(restrict(r, x, r.n()));

    peak_split_result out;
    for (int y = 1; y <= r.n(); ++y) {
        const field_spec& fs = r.field();
        int d = r.dim(y);
        if (y < x) {
            std::vector<int> thr, oth;
            for (int j = 0; j < d; ++j) {
                int id = dl.column_tags[y - 1][j];
                (dl.summands[id].iv.b == x ? thr : oth).push_back(j);
            }
            out.through.emplace_back(take_columns(dl.base_change[y - 1], thr));
            out.left.emplace_back(take_columns(dl.base_change[y - 1], oth));
            out.right.push_back(subspace::zero(d, fs));
        } else if (y == x) {
            out.through.push_back(subspace::full(d, fs));
            out.left.push_back(subspace::zero(d, fs));
            out.right.push_back(subspace::zero(d, fs));
        } else {
            int local = y - x + 1;
            std::vector<int> thr, oth;
            for (int j = 0; j < d; ++j) {
                int id = dr.column_tags[local - 1][j];
                (dr.summands[id].iv.a == 1 ? thr : oth).push_back(j);
            }
            out.through.emplace_back(take_columns(dr.base_change[local - 1], thr));
            out.right.emplace_back(take_columns(dr.base_change[local - 1], oth));
            out.left.push_back(subspace::zero(d, fs));
        }
    }
    return out;
}

std::pair<representation, std::vector<matrix>> collapse_middle(const representation& r) {
    int n = r.n();
    const field_spec& fs = r.field();
    if (n < 3)
        throw std::logic_error("collapse_middle: need n >= 3, got n=" + std::to_string(n));
    if (!is_peak(r, 2) || !is_peak(r, n - 1))
        throw std::logic_error("collapse_middle: peaks at 2 and " + std::to_string(n - 1) +
                               " required");
    std::vector<matrix> transport{matrix::identity(r.dim(2), fs)};
    for (int y = 2; y <= n - 2; ++y) {
        auto step = try_inverse(r.map(y));
        if (!step)
            throw std::logic_error("collapse_middle: map on edge " + std::to_string(y) +
                                   " is not invertible");
        transport.push_back(r.orient().dir(y) == arrow_dir::forward
                                ? transport.back() * *step
                                : transport.back() * r.map(y));
    }
    orientation o3(3, {r.orient().dirs.front(), r.orient().dirs.back()});
    std::vector<int> dims3{r.dim(1), r.dim(2), r.dim(n)};
    const matrix& last = r.map(n - 1);
    matrix edge2 = (r.orient().dir(n - 1) == arrow_dir::forward)
                       ? last * inverse(transport.back())
                       : transport.back() * last;
    return {representation(o3, std::move(dims3), {r.map(1), std::move(edge2)}, fs),
            std::move(transport)};
}

std::optional<std::string> check_decomposition(const representation& r, const decomposition& d) {
    int n = r.n();
    if (static_cast<int>(d.base_change.size()) != n) return "base_change has wrong length";
    if (static_cast<int>(d.column_tags.size()) != n) return "column_tags has wrong length";
    if (d.bars.n != n) return "barcode is for a different quiver size";

    int k = static_cast<int>(d.summands.size());
    std::vector<interval> iv_of(k, interval{0, 0});
    std::vector<bool> seen(k, false);
    for (const auto& s : d.summands) {
        if (s.id < 0 || s.id >= k) return "summand id " + std::to_string(s.id) + " out of range";
        if (seen[s.id]) return "summand id " + std::to_string(s.id) + " repeated";
        seen[s.id] = true;
        if (s.iv.a < 1 || s.iv.a > s.iv.b || s.iv.b > n)
            return "summand " + std::to_string(s.id) + " has an invalid interval";
        iv_of[s.id] = s.iv;
    }

    barcode expect;
    expect.n = n;
    for (int id = 0; id < k; ++id) expect.add(iv_of[id]);
    if (expect != d.bars) return "barcode does not match the summand list";

    // per-vertex shape, tag, and ownership bookkeeping
    std::vector<std::map<int, int>> col_of(n);  // vertex -> id -> column
    for (int x = 1; x <= n; ++x) {
        const matrix& p = d.base_change[x - 1];
        if (p.rows() != r.dim(x) || p.cols() != r.dim(x))
            return "base change at vertex " + std::to_string(x) + " has the wrong shape";
        if (p.spec() != r.field())
            return "base change at vertex " + std::to_string(x) + " is over the wrong field";
        const auto& tags = d.column_tags[x - 1];
        if (static_cast<int>(tags.size()) != r.dim(x))
            return "column tags at vertex " + std::to_string(x) + " have the wrong length";
        for (int j = 0; j < r.dim(x); ++j) {
            int id = tags[j];
            if (id < 0 || id >= k)
                return "column tag at vertex " + std::to_string(x) + " names no summand";
            if (!iv_of[id].contains(x))
                return "summand " + std::to_string(id) + " owns a column outside its interval";
            if (!col_of[x - 1].emplace(id, j).second)
                return "summand " + std::to_string(id) + " owns two columns at vertex " +
                       std::to_string(x);
        }
    }
    for (int id = 0; id < k; ++id)
        for (int x = iv_of[id].a; x <= iv_of[id].b; ++x)
            if (!col_of[x - 1].count(id))
                return "summand " + std::to_string(id) + " has no column at vertex " +
                       std::to_string(x);

    std::vector<matrix> inv;
    for (int x = 1; x <= n; ++x) {
        auto i = try_inverse(d.base_change[x - 1]);
        if (!i) return "base change at vertex " + std::to_string(x) + " is singular";
        inv.push_back(std::move(*i));
    }

    for (int e = 1; e < n; ++e) {
        int s = r.orient().arrow_source(e), t = r.orient().arrow_target(e);
        matrix conj = inv[t - 1] * r.map(e) * d.base_change[s - 1];
        matrix want(r.dim(t), r.dim(s), r.field());
        for (const auto& [id, js] : col_of[s - 1]) {
            auto it = col_of[t - 1].find(id);
            if (it != col_of[t - 1].end())
                want(it->second, js) = scalar::one(r.field());
        }
        if (conj != want)
            return "conjugated map on edge " + std::to_string(e) +
                   " is not the summand matching";
    }
    return std::nullopt;
}

}  // namespace anq
