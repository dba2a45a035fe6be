#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "anq/quiver.hpp"

namespace anq {

/// Deterministic random source for instance generation. Built on the
/// standard-pinned mt19937_64 stream with rejection sampling, so the same
/// seed yields the same instance on every platform.
class rng64 {
public:
    explicit rng64(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform in [0, bound); bound >= 1.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform in [lo, hi], inclusive.
    long long range(long long lo, long long hi);

    /// Uniform residue for prime fields; numerator in [-4, 4] over
    /// denominator in [1, 3] for Q.
    scalar random_scalar(const field_spec& fs);
    matrix random_matrix(int rows, int cols, const field_spec& fs);
    /// Rejection-samples square matrices until one is invertible. Entries
    /// are uniform residues, or integers in [-2, 2] over Q to keep planted
    /// instances from blowing up numerically.
    matrix random_invertible(int dim, const field_spec& fs);

private:
    std::mt19937_64 eng_;
};

/// dim Hom(x, y): the dimension of the space of morphisms x -> y, computed
/// as the nullity of the stacked commutativity constraints. Independent of
/// the decomposition machinery; used as ground truth against it.
long long hom_dim(const representation& x, const representation& y);

/// Reads off the multiplicity of every interval summand of r by solving
/// the linear system linking Hom dimensions against thin modules. Exact;
/// throws std::logic_error if the system is singular or the solution is
/// not a vector of non-negative integers (either would contradict the
/// Krull-Schmidt structure of the category).
barcode multiplicities_via_hom(const representation& r);

struct plant_spec {
    orientation orient;
    barcode bars;
    field_spec field = field_spec::rational();
    std::uint64_t seed = 0;
};

/// Builds sum_of_thins(bars) and hides it behind seeded random invertible
/// base changes at every vertex. The returned barcode is the planted truth.
std::pair<representation, barcode> plant_instance(const plant_spec& spec);

/// Fully random representation: dimensions uniform in [0, max_dim], entries
/// from rng64::random_matrix.
representation random_instance(const orientation& o, int max_dim, const field_spec& fs,
                               std::uint64_t seed);

}  // namespace anq
