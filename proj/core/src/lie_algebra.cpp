#include "lieseq/lie_algebra.hpp"

#include <algorithm>
#include <map>

#include "lieseq/error.hpp"

namespace lieseq {

LieAlgebra::LieAlgebra(std::string name, std::size_t dim, Ring ring, std::vector<StructureConstant> constants,
                       std::vector<std::string> basis_names, std::optional<std::vector<WeightVector>> weights)
    : name_(std::move(name)), dim_(dim), ring_(ring), names_(std::move(basis_names)), weights_(std::move(weights)) {
  if (dim_ == 0) throw DomainError("Lie algebra must have positive dimension");
  if (names_.empty())
    for (std::size_t i = 0; i < dim_; ++i) names_.push_back("e" + std::to_string(i + 1));
  if (names_.size() != dim_) throw DomainError("basis name count differs from dimension");
  if (weights_) {
    if (weights_->size() != dim_) throw DomainError("weight count differs from dimension");
    for (const auto& w : *weights_)
      if (w.size() != (*weights_)[0].size()) throw DomainError("weight vectors of unequal length");
  }
  std::map<std::array<std::uint32_t, 3>, std::int64_t> seen;
  for (auto c : constants) {
    if (c.i >= dim_ || c.j >= dim_ || c.k >= dim_)
      throw DomainError("structure constant index out of range in " + name_);
    if (c.i == c.j) throw DomainError("structure constant [e_i, e_i] must vanish");
    if (c.i > c.j) {
      std::swap(c.i, c.j);
      c.value = -c.value;
    }
    auto [it, fresh] = seen.emplace(std::array{c.i, c.j, c.k}, c.value);
    if (!fresh)
      throw DomainError("repeated structure constant (" + std::to_string(c.i + 1) + "," + std::to_string(c.j + 1) +
                        "," + std::to_string(c.k + 1) + ")");
  }
  for (const auto& [key, v] : seen) {
    std::int64_t r = ring_.reduce(v);
    if (r != 0) constants_.push_back({key[0], key[1], key[2], r});
  }
  table_.assign(dim_ * dim_, {});
  for (const auto& c : constants_) {
    table_[c.i * dim_ + c.j].push_back({c.k, c.value});
    table_[c.j * dim_ + c.i].push_back({c.k, ring_.reduce(-c.value)});
  }
}

const std::vector<WeightVector>& LieAlgebra::weights() const {
  if (!weights_) throw DomainError(name_ + " carries no weights");
  return *weights_;
}

const std::vector<BracketTerm>& LieAlgebra::bracket(std::size_t i, std::size_t j) const {
  if (i >= dim_ || j >= dim_) throw DomainError("bracket index out of range");
  return table_[i * dim_ + j];
}

LieAlgebra LieAlgebra::with_ring(const Ring& ring) const {
  if (ring_ == ring) return *this;
  if (ring_.is_prime_field())
    throw DomainError("cannot change scalars of " + name_ + " from " + ring_.name() + " to " + ring.name());
  return LieAlgebra(name_, dim_, ring, constants_, names_, weights_);
}

LieAlgebra LieAlgebra::with_name(std::string name) const {
  LieAlgebra g = *this;
  g.name_ = std::move(name);
  return g;
}

LieAlgebra LieAlgebra::without_weights() const { return LieAlgebra(name_, dim_, ring_, constants_, names_, {}); }

JacobiReport jacobi_check(const LieAlgebra& g) {
  const std::size_t n = g.dim();
  const Ring& ring = g.ring();
  JacobiReport rep;
  std::vector<std::int64_t> acc(n);
  // Adds [[a,b],c] into acc.
  auto add_nested = [&](std::size_t a, std::size_t b, std::size_t c) {
    for (const auto& [m, v] : g.bracket(a, b))
      for (const auto& [k, w] : g.bracket(m, c)) {
        __int128 prod = static_cast<__int128>(v) * w + acc[k];
        if (prod > INT64_MAX || prod < INT64_MIN) throw DomainError("overflow in Jacobi sum");
        acc[k] = ring.reduce(static_cast<std::int64_t>(prod));
      }
  };
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      for (std::uint32_t k = j + 1; k < n; ++k) {
        std::fill(acc.begin(), acc.end(), 0);
        add_nested(i, j, k);
        add_nested(j, k, i);
        add_nested(k, i, j);
        for (std::uint32_t m = 0; m < n; ++m)
          if (ring.reduce(acc[m]) != 0) rep.residual.push_back({m, ring.reduce(acc[m])});
        if (!rep.residual.empty()) {
          rep.ok = false;
          rep.triple = {i, j, k};
          return rep;
        }
      }
  return rep;
}

std::optional<std::string> weight_incompatibility(const LieAlgebra& g) {
  if (!g.has_weights()) return std::nullopt;
  const auto& w = g.weights();
  for (const auto& c : g.constants()) {
    WeightVector sum = w[c.i];
    for (std::size_t a = 0; a < sum.size(); ++a) sum[a] += w[c.j][a];
    if (sum != w[c.k])
      return "[" + g.basis_names()[c.i] + "," + g.basis_names()[c.j] + "] has a component on " +
             g.basis_names()[c.k] + " of a different weight";
  }
  return std::nullopt;
}

std::vector<std::vector<std::int64_t>> killing_form(const LieAlgebra& g) {
  const std::size_t n = g.dim();
  std::vector<std::vector<std::int64_t>> k(n, std::vector<std::int64_t>(n, 0));
  // (ad e_i)_{l,m} = coefficient of e_l in [e_i, e_m]
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t s = 0;
      for (std::size_t m = 0; m < n; ++m)
        for (const auto& [l, v] : g.bracket(j, m))
          for (const auto& [q, w] : g.bracket(i, l))
            if (q == m) s = g.ring().reduce(s + v * w);
      k[i][j] = s;
    }
  return k;
}

}  // namespace lieseq
