#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anq/quiver.hpp"

namespace anq {

struct summand_tag {
    int id;
    interval iv;

    friend bool operator==(const summand_tag&, const summand_tag&) = default;
};

/// A complete decomposition of a representation into interval summands,
/// with the change of basis that exhibits it.
struct decomposition {
    barcode bars;
    /// base_change[x-1] is an invertible dim(x) x dim(x) matrix; column j
    /// is the j-th new basis vector of the fiber at x, written in the
    /// original coordinates.
    std::vector<matrix> base_change;
    /// column_tags[x-1][j] is the id of the summand owning column j of
    /// base_change[x-1].
    std::vector<std::vector<int>> column_tags;
    /// Sorted by id; ids run 0..k-1 in the canonical order: intervals
    /// ordered by (a, b), ties by position of the summand's column at its
    /// start vertex.
    std::vector<summand_tag> summands;
};

/// Decomposes an arbitrary representation. The result is canonical for
/// the construction: deterministic for a given input.
decomposition decompose(const representation& r);

/// The two-vertex case: kernel, paired image, and cokernel summands read
/// off one linear map.
decomposition decompose_linear_map(const representation& r);

/// The three per-vertex systems of subspaces splitting r at an interior
/// peak x: summands through x (b), summands living left of x (c), and
/// summands living right of x (d).
struct peak_split_result {
    std::vector<subspace> through;  ///< spans of summands containing x
    std::vector<subspace> left;     ///< supported in [1, x-1]
    std::vector<subspace> right;    ///< supported in [x+1, n]
};

/// Splits any representation at an interior vertex 1 < x < n by
/// decomposing the two windows [1, x] and [x, n] and regrouping their
/// summands around x; the `through` part always has x as a peak.
peak_split_result peak_split(const representation& r, int x);

/// For a representation with peaks at 2 and n-1 whose middle maps are all
/// invertible: identifies the fibers 2..n-1 with the fiber at 2 and
/// returns the equivalent three-vertex representation together with the
/// identifications transport[y-2] : fiber(y) -> fiber(2) for y in 2..n-1.
/// For n = 3 this is the identity operation.
std::pair<representation, std::vector<matrix>> collapse_middle(const representation& r);

/// The three-vertex case at a peak: a compatible basis of two subspaces
/// of the middle fiber induces the interval summands directly. Requires
/// n = 3 and is_peak(r, 2).
decomposition decompose_a3_peak(const representation& r);

/// Checks a decomposition against its representation from scratch: shapes,
/// invertibility, tag consistency, barcode bookkeeping, and that every
/// conjugated edge map is exactly the 0/1 matching of shared summand
/// coordinates. Returns nullopt on success, else a description of the
/// first failure. Exact; no tolerances anywhere.
std::optional<std::string> check_decomposition(const representation& r, const decomposition& d);

}  // namespace anq
