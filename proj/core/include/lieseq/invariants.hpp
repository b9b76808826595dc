#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "lieseq/lie_algebra.hpp"

namespace lieseq {

// Homogeneous polynomial in the dual generators y_1..y_n with integer
// coefficients; keys are exponent vectors of length n.
struct InvariantPolynomial {
  std::size_t nvars = 0;
  std::size_t degree = 0;
  std::map<std::vector<std::uint32_t>, std::int64_t> terms;
};

// Coefficient σ_i of the characteristic polynomial det(t - X) = Σ (-1)^i σ_i t^{n-i}
// of a generic X = Σ y_k B_k in the builtin sl(n) basis, i.e. the sum of the
// principal i×i minors. Requires 2 <= i <= n.
InvariantPolynomial sigma_invariant(std::size_t n, std::size_t i);

// K(X, X) as a quadratic polynomial in the y's.
InvariantPolynomial killing_quadratic(const LieAlgebra& g);

}  // namespace lieseq
