#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "anq/field.hpp"

namespace anq {

/// Dense matrix over a fixed field, row-major. Zero rows or columns are
/// legal; a 0 x c or r x 0 matrix takes part in products and concatenation
/// like any other.
class matrix {
public:
    matrix(int rows, int cols, const field_spec& fs);
    static matrix identity(int n, const field_spec& fs);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const field_spec& spec() const { return spec_; }

    scalar& operator()(int i, int j) { return ent_[static_cast<std::size_t>(i) * cols_ + j]; }
    const scalar& operator()(int i, int j) const {
        return ent_[static_cast<std::size_t>(i) * cols_ + j];
    }

    /// Column j as an rows() x 1 matrix.
    matrix column(int j) const;
    bool is_zero() const;
    bool is_identity() const;

    friend bool operator==(const matrix& a, const matrix& b);
    friend bool operator!=(const matrix& a, const matrix& b) { return !(a == b); }

private:
    int rows_, cols_;
    field_spec spec_;
    std::vector<scalar> ent_;
};

std::ostream& operator<<(std::ostream& os, const matrix& m);

/// Shape- and field-checked product. Throws std::invalid_argument on
/// mismatch.
matrix operator*(const matrix& a, const matrix& b);
matrix operator+(const matrix& a, const matrix& b);
matrix operator-(const matrix& a, const matrix& b);

matrix transpose(const matrix& m);
/// [a | b], side by side.
matrix hcat(const matrix& a, const matrix& b);
/// Columns of m at the given indices, in the given order.
matrix take_columns(const matrix& m, const std::vector<int>& idx);

struct rref_result {
    matrix r;                ///< reduced row echelon form of the input
    std::vector<int> pivots; ///< pivot column indices, strictly increasing
    matrix t;                ///< invertible; r == t * input
};

/// Gauss-Jordan elimination with full transform tracking. Pivot choice is
/// the lowest-index nonzero row in each column, scanned left to right, so
/// the result is identical across platforms.
rref_result rref(const matrix& m);

/// Rank via forward elimination only (cheaper than rref when the transform
/// is not needed).
int rank(const matrix& m);

/// A subspace of k^d held as a d x k matrix of linearly independent basis
/// columns. Construction validates independence.
class subspace {
public:
    explicit subspace(matrix basis);
    static subspace zero(int ambient_dim, const field_spec& fs);
    static subspace full(int ambient_dim, const field_spec& fs);

    int ambient_dim() const { return basis_.rows(); }
    int dim() const { return basis_.cols(); }
    const matrix& basis() const { return basis_; }
    const field_spec& spec() const { return basis_.spec(); }

    bool contains(const matrix& vec) const;

private:
    matrix basis_;
};

/// Basis of ker(m), one column per free variable of the reduced form, in
/// increasing free-column order.
subspace kernel_basis(const matrix& m);
/// Basis of the column space: the columns of m at its pivot indices.
subspace image_basis(const matrix& m);

/// Completes s to a basis of the ambient space: [s.basis | e_{i_1} | ...]
/// where the unit vectors are chosen greedily in increasing coordinate
/// order. The result is square and invertible.
matrix extend_to_basis(const subspace& s);

/// Basis of the ambient space adapted to a pair of subspaces; the four
/// blocks concatenate to an invertible matrix.
struct partitioned_basis {
    matrix both;    ///< basis of u1 ∩ u2
    matrix first;   ///< completes `both` to a basis of u1
    matrix second;  ///< completes `both` to a basis of u2
    matrix neither; ///< unit vectors completing the rest to a full basis

    matrix concat() const;
};

/// Computes the intersection via the kernel of [b1 | b2], then extends it
/// into u1, into u2, and finally to the whole space. Deterministic.
partitioned_basis compatible_basis_two_subspaces(const subspace& u1, const subspace& u2);

/// Inverse of a square full-rank matrix; nullopt otherwise.
std::optional<matrix> try_inverse(const matrix& a);
/// Like try_inverse but throws std::invalid_argument on singular input.
matrix inverse(const matrix& a);

/// One solution x of a x = b with free variables set to zero, for each
/// column of b; nullopt if any column is inconsistent.
std::optional<matrix> solve(const matrix& a, const matrix& b);

}  // namespace anq
