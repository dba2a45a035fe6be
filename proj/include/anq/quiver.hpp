#pragma once

#include <compare>
#include <map>
#include <ostream>
#include <vector>

#include "anq/linalg.hpp"

namespace anq {

enum class arrow_dir { forward, backward };

/// Orientation of a type-A line quiver on vertices 1..n. Edge e (1-based,
/// e in 1..n-1) joins vertices e and e+1; forward means the arrow points
/// e -> e+1, backward means e+1 -> e.
struct orientation {
    int n = 1;
    std::vector<arrow_dir> dirs;

    orientation() = default;
    orientation(int n_, std::vector<arrow_dir> dirs_);

    arrow_dir dir(int e) const { return dirs[static_cast<std::size_t>(e) - 1]; }
    int arrow_source(int e) const { return dir(e) == arrow_dir::forward ? e : e + 1; }
    int arrow_target(int e) const { return dir(e) == arrow_dir::forward ? e + 1 : e; }

    /// "ffb" for 1 -> 2 -> 3 <- 4; "" for n = 1.
    std::string str() const;
    static orientation parse(int n, const std::string& text);

    friend bool operator==(const orientation&, const orientation&) = default;
};

orientation reversed(const orientation& o);

/// Closed integer interval [a, b] of vertices, 1 <= a <= b.
struct interval {
    int a = 1;
    int b = 1;

    bool contains(int x) const { return a <= x && x <= b; }
    int length() const { return b - a + 1; }

    friend auto operator<=>(const interval&, const interval&) = default;
};

std::ostream& operator<<(std::ostream& os, const interval& iv);

/// Multiset of intervals in [1, n] with positive multiplicities, ordered
/// lexicographically by (a, b).
struct barcode {
    int n = 1;
    std::map<interval, long long> items;

    void add(interval iv, long long mult = 1);
    long long total_multiplicity() const;
    /// Sum over intervals containing x of their multiplicities.
    long long dim_at(int x) const;

    friend bool operator==(const barcode&, const barcode&) = default;
};

std::ostream& operator<<(std::ostream& os, const barcode& bc);

barcode barcode_sum(const barcode& x, const barcode& y);
/// Barcode of the reversed quiver: [a, b] becomes [n+1-b, n+1-a].
barcode barcode_mirror(const barcode& bc);

/// A representation of an oriented type-A quiver: one space per vertex,
/// one matrix per edge, stored so that the matrix of edge e maps the
/// source space to the target space (so its shape is d_target x d_source).
class representation {
public:
    representation(orientation o, std::vector<int> dims, std::vector<matrix> maps, field_spec fs);

    const orientation& orient() const { return orient_; }
    const field_spec& field() const { return field_; }
    int n() const { return orient_.n; }
    /// Dimension at vertex x (1-based).
    int dim(int x) const { return dims_[static_cast<std::size_t>(x) - 1]; }
    const std::vector<int>& dims() const { return dims_; }
    /// Matrix of edge e (1-based, 1 <= e <= n-1).
    const matrix& map(int e) const { return maps_[static_cast<std::size_t>(e) - 1]; }

    long long total_dim() const;

    friend bool operator==(const representation&, const representation&) = default;

private:
    orientation orient_;
    field_spec field_;
    std::vector<int> dims_;
    std::vector<matrix> maps_;
};

/// The thin representation of an interval: one-dimensional spaces on the
/// vertices of iv, identity maps on edges inside it, zero elsewhere.
representation thin(const orientation& o, interval iv, const field_spec& fs);

/// Direct sum of the vertex spaces of all bars of bc, in barcode order,
/// with the edge maps acting as the matching of shared coordinates. The
/// single-bar sum equals thin(o, iv) verbatim.
representation sum_of_thins(const orientation& o, const barcode& bc, const field_spec& fs);

representation direct_sum(const representation& x, const representation& y);

/// Conjugates every edge map by the given per-vertex invertible matrices:
/// new edge map = inverse(p[target]) * old * p[source]. The p[x] column
/// spaces express old coordinates of new basis vectors.
representation apply_base_change(const representation& r, const std::vector<matrix>& p);

/// The restriction to vertices lo..hi, reindexed to 1..hi-lo+1.
representation restrict(const representation& r, int lo, int hi);

/// Relabels vertex x as n+1-x, turning every arrow around.
representation reverse(const representation& r);

/// Vertex x is a peak when every arrow that decreases the graph distance
/// to x is injective and every arrow that increases it is surjective —
/// a condition on all n-1 arrows, not just the ones at x.
bool is_peak(const representation& r, int x);

/// The subrepresentation spanned by the given per-vertex subspaces,
/// written in their bases. Throws std::invalid_argument if the subspaces
/// are not invariant under the edge maps.
representation subrepresentation(const representation& r, const std::vector<subspace>& spaces);

}  // namespace anq
