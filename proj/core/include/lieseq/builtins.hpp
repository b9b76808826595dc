#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lieseq/lie_algebra.hpp"

namespace lieseq::builtin {

inline constexpr std::size_t kDefaultMaxDim = 10;

// All builtins have integral constants and are returned over Z; use
// LieAlgebra::with_ring for other rings.

// Basis: H_1..H_{n-1} (H_k = E_kk - E_{k+1,k+1}), then E_ij for i<j, then
// E_ij for i>j. For n = 2 this is (h, e, f). Weights are the H-eigenvalues of
// the dual generators.
LieAlgebra sl(std::size_t n, std::size_t max_dim = kDefaultMaxDim);
// Matrices [[A, B], [C, -A^T]] with B, C symmetric. Weights from the
// diagonal Cartan.
LieAlgebra sp(std::size_t two_n, std::size_t max_dim = kDefaultMaxDim);
// Basis E_ij - E_ji, i < j. No weights.
LieAlgebra so(std::size_t n, std::size_t max_dim = kDefaultMaxDim);
// Basis (h, e) with [e, h] = e; weights (0, 1).
LieAlgebra nonabelian2();
LieAlgebra abelian(std::size_t n, std::size_t max_dim = kDefaultMaxDim);
LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b, std::size_t max_dim = kDefaultMaxDim);

// Algebra spanned by integer matrices, with brackets expressed back in the
// given basis. Throws DomainError if the span is not closed over Z.
LieAlgebra from_matrix_basis(std::string name, const std::vector<std::vector<std::vector<std::int64_t>>>& basis,
                             std::vector<std::string> names, std::optional<std::vector<WeightVector>> weights);

// "sl2", "sl3", "sl(3)", "sl:3", "sp4", "so5", "nonabelian2", "abelian:3",
// and direct sums "A+B".
LieAlgebra by_name(std::string_view name, std::size_t max_dim = kDefaultMaxDim);

}  // namespace lieseq::builtin
