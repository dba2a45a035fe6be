#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "anq/decompose.hpp"
#include "anq/quiver.hpp"

namespace anq {

/// A document could not be understood: bad syntax, bad shape, bad scalar,
/// bad field. The message names the offending location.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A produced result failed its own re-check.
struct verify_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Instance documents are JSON objects with fields
///   field:       {"kind": "prime", "p": 5} or {"kind": "rational"}
///   n:           vertex count
///   orientation: n-1 tokens "f" (edge e points e -> e+1) or "b"
///   dims:        n fiber dimensions
///   maps:        n-1 matrices, each an array of rows of scalar strings;
///                the matrix of edge e has dim(target) rows and
///                dim(source) columns
/// Scalars use the same text encoding as scalar::parse. Numbers other
/// than dimensions and n are never bare JSON numbers, so no precision can
/// be lost in transit.
representation parse_instance(const std::string& text);

/// Canonical form: two-space indentation, alphabetical keys, trailing
/// newline. emit_instance then parse_instance is the identity, and equal
/// representations emit byte-identical documents.
std::string emit_instance(const representation& r);

/// A certificate document carries the field, n, dims, the barcode as
/// [a, b, multiplicity] triples, per-vertex base-change matrices, the
/// column tags, and the summand intervals indexed by id.
struct certificate_file {
    field_spec field = field_spec::rational();
    int n = 1;
    std::vector<int> dims;
    decomposition decomp;
};

std::string emit_certificate(const representation& r, const decomposition& d);
certificate_file parse_certificate(const std::string& text);

/// Checks a parsed certificate against the representation it claims to
/// decompose: header fields first, then the full certificate check.
/// Returns nullopt on success, else the first failure.
std::optional<std::string> check_certificate(const representation& r, const certificate_file& c);

/// One line per interval, "a b multiplicity", sorted by (a, b),
/// newline-terminated; zero multiplicities are omitted.
std::string barcode_text(const barcode& bc);

/// Two nested chains of subspaces of k^dim, each given by a spanning-set
/// matrix (columns span the subspace; they need not be independent).
struct filtration_input {
    field_spec field = field_spec::rational();
    int dim = 0;
    std::vector<matrix> chain1;
    std::vector<matrix> chain2;
};

/// Filtration documents are JSON objects with fields field, dim, chain1,
/// chain2; each chain is an array of matrices in the same row-array
/// encoding as instance maps, every matrix with `dim` rows. Nesting of
/// each chain is verified on load.
filtration_input parse_filtrations(const std::string& text);
std::string emit_filtrations(const filtration_input& f);

/// A basis of the ambient space in which every subspace of both chains is
/// spanned by a subset of the basis vectors. chain1_from[j] is the
/// smallest i such that column j of `basis` lies in the i-th subspace of
/// chain1 (so it lies in every later one too), or 0 if it lies in none;
/// likewise chain2_from.
struct refined_basis {
    matrix basis;
    std::vector<int> chain1_from;
    std::vector<int> chain2_from;
};

/// Builds the two-chain quiver representation (chain one on the left,
/// chain two mirrored on the right, all arrows pointing at the shared
/// ambient vertex, maps the chain inclusions), decomposes it, and reads
/// the compatible basis off the ambient-vertex columns. The claimed
/// memberships are re-verified exactly; failure raises verify_error.
refined_basis refine_filtrations(const filtration_input& f);

/// One line per basis vector: the entries, the chain-one memberships, the
/// chain-two memberships ("U3 U4" / "U'2" / "-").
std::string refinement_report(const refined_basis& rb, int m1, int m2);

}  // namespace anq
