#pragma once

#include <cstddef>
#include <cstdint>

#include "lieseq/sparse_matrix.hpp"

namespace lieseq::detail {

std::size_t rank_mod_p(const SparseMatrix& m, std::uint32_t p);
// Rank over Q of an integer matrix, by fraction-free elimination. Runs on
// 64-bit integers and restarts with GMP integers on overflow.
std::size_t rank_over_q(const SparseMatrix& m);

}  // namespace lieseq::detail
