#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "lieseq/ring.hpp"
#include "lieseq/sparse_matrix.hpp"

namespace lieseq::linalg {

// Rank over a field, or over Q for Z-valued matrices over Z.
std::size_t rank(const SparseMatrix& m, const Ring& ring);

struct RankKernel {
  std::size_t rank = 0;
  // Over F_p: vectors with a unit in their distinguishing coordinate.
  // Over Q: primitive integer vectors.
  std::vector<SparseVector> kernel;
};

// Throws DomainError for Z (use integer_kernel or cohomology_at).
RankKernel rank_and_kernel(const SparseMatrix& m, const Ring& ring);

// Some x with m·x = rhs over a field, or nullopt if rhs is outside the
// column span.
std::optional<SparseVector> solve(const SparseMatrix& m, const SparseVector& rhs, const Ring& ring);

// Indices of a maximal set of linearly independent columns, chosen greedily
// left to right.
std::vector<std::size_t> independent_columns(const SparseMatrix& m, const Ring& ring);

struct SmithForm {
  // Nonzero invariant factors d_1 | d_2 | ... , all positive.
  std::vector<mpz_class> invariants;
  std::size_t rank() const { return invariants.size(); }
};

SmithForm smith_normal_form(const SparseMatrix& m);

using DenseIntMatrix = std::vector<std::vector<mpz_class>>;

// A Z-basis of ker(m) together with the coordinate map onto it: coords·v
// gives the coordinates of any v in the kernel. The basis is saturated
// because it comes from unimodular column operations.
struct IntegerKernel {
  std::size_t ambient = 0;
  DenseIntMatrix basis;   // ambient × k, columns are the basis
  DenseIntMatrix coords;  // k × ambient
};

IntegerKernel integer_kernel(const SparseMatrix& m);

struct CohomologyGroup {
  Ring ring = Ring::rationals();
  // Dimension over a field; free rank over Z.
  std::size_t dimension = 0;
  // Invariant factors > 1 (Z only).
  std::vector<mpz_class> torsion;
};

// H = ker(d_out) / im(d_in). Checks shapes and d_out·d_in = 0; the error
// names `label` when given.
CohomologyGroup cohomology_at(const SparseMatrix& d_in, const SparseMatrix& d_out, const Ring& ring,
                              std::string_view label = {});

// Elementary divisors of an invariant factor list: {6, 12} → {2,3,4,3}.
std::vector<std::pair<mpz_class, unsigned>> prime_power_decomposition(const std::vector<mpz_class>& invariants);

}  // namespace lieseq::linalg
