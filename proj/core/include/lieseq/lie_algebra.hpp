#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lieseq/ring.hpp"

namespace lieseq {

// Weight of a dual generator; one integer per Cartan coordinate.
using WeightVector = std::vector<std::int64_t>;

// [e_i, e_j] has coefficient `value` on e_k. Indices are 0-based, i < j.
struct StructureConstant {
  std::uint32_t i, j, k;
  std::int64_t value;
  friend bool operator==(const StructureConstant&, const StructureConstant&) = default;
};

using BracketTerm = std::pair<std::uint32_t, std::int64_t>;

class LieAlgebra {
 public:
  // Constants with i > j are flipped with a sign change; i == j and repeated
  // (i,j,k) are rejected. Values are reduced into the ring and zeros dropped.
  LieAlgebra(std::string name, std::size_t dim, Ring ring, std::vector<StructureConstant> constants,
             std::vector<std::string> basis_names = {}, std::optional<std::vector<WeightVector>> weights = {});

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  const Ring& ring() const { return ring_; }
  const std::vector<StructureConstant>& constants() const { return constants_; }
  const std::vector<std::string>& basis_names() const { return names_; }
  bool has_weights() const { return weights_.has_value(); }
  const std::vector<WeightVector>& weights() const;
  std::size_t weight_rank() const { return weights_ && !weights_->empty() ? (*weights_)[0].size() : 0; }

  // Expansion of [e_i, e_j] for any i, j.
  const std::vector<BracketTerm>& bracket(std::size_t i, std::size_t j) const;

  // Extension of scalars; only Z/Q → anything and F_p → F_p are allowed.
  LieAlgebra with_ring(const Ring& ring) const;
  LieAlgebra with_name(std::string name) const;
  LieAlgebra without_weights() const;

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.name_ == b.name_ && a.dim_ == b.dim_ && a.ring_ == b.ring_ && a.constants_ == b.constants_ &&
           a.names_ == b.names_ && a.weights_ == b.weights_;
  }

 private:
  std::string name_;
  std::size_t dim_;
  Ring ring_;
  std::vector<StructureConstant> constants_;
  std::vector<std::string> names_;
  std::optional<std::vector<WeightVector>> weights_;
  std::vector<std::vector<BracketTerm>> table_;  // dim*dim, antisymmetric
};

struct JacobiReport {
  bool ok = true;
  // First violating triple (i < j < k) and its nonzero Jacobi sum.
  std::array<std::uint32_t, 3> triple{};
  std::vector<BracketTerm> residual;
};

JacobiReport jacobi_check(const LieAlgebra& g);

// Empty if compatible; otherwise describes the first offending constant.
std::optional<std::string> weight_incompatibility(const LieAlgebra& g);

// K(e_i, e_j) = tr(ad e_i ∘ ad e_j), in the algebra's ring.
std::vector<std::vector<std::int64_t>> killing_form(const LieAlgebra& g);

}  // namespace lieseq
