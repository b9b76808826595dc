#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "lieseq/lie_algebra.hpp"
#include "lieseq/sparse_matrix.hpp"

namespace lieseq {

inline constexpr std::size_t kMaxGenerators = 16;
using Exponents = std::array<std::uint8_t, kMaxGenerators>;

// x_I · y^a with I a set (bit i ↔ x_i) and a an exponent vector. The x's are
// written in increasing index order.
struct Monomial {
  std::uint32_t exterior = 0;
  Exponents poly{};

  int t() const { return __builtin_popcount(exterior); }
  int s() const {
    int sum = 0;
    for (auto e : poly) sum += e;
    return sum;
  }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct Term {
  Monomial mono;
  std::int64_t coef;
};

struct AxiomReport {
  std::size_t blocks = 0;   // blocks (s, t) in the truncation
  std::size_t columns = 0;  // basis vectors in the truncation
  std::string failure;      // first failing identity, empty if none
  bool ok() const { return failure.empty(); }
};

struct Stratum {
  WeightVector weight;
  std::vector<std::uint32_t> members;  // block indices, increasing
};

// The bigraded algebra E_0^{s,t} = Λ^t(g*) ⊗ S^s(g*) of a Lie algebra with
// its two commuting differentials d_0 (the Chevalley–Eilenberg derivation,
// bidegree (0,1)) and d_1 (x_i ↦ y_i, bidegree (1,-1)).
//
// Block bases are ordered exterior-major: the t-subsets in lexicographic
// order, each followed by the degree-s exponent vectors in the order of
// their sorted index tuples (y_1^2, y_1y_2, ..., y_n^2).

class KoszulComplex {
 public:
  explicit KoszulComplex(LieAlgebra g);

  const LieAlgebra& algebra() const { return g_; }
  const Ring& ring() const { return g_.ring(); }
  std::size_t n() const { return n_; }

  // Zero outside 0 <= t <= n, s >= 0.
  std::size_t block_size(int s, int t) const;
  Monomial element(int s, int t, std::size_t index) const;
  std::size_t index_of(const Monomial& m) const;
  std::vector<Monomial> block_basis(int s, int t) const;
  // Empty when the algebra carries no weights.
  WeightVector weight_of(const Monomial& m) const;
  std::string describe(const Monomial& m) const;

  // Raw expansions (integer coefficients, unreduced, possibly repeated).
  void d0_terms(const Monomial& m, std::vector<Term>& out) const;
  void d1_terms(const Monomial& m, std::vector<Term>& out) const;

  // d_0 : E^{s,t} → E^{s,t+1} and d_1 : E^{s,t} → E^{s+1,t-1}, with entries in
  // the algebra's ring.
  SparseMatrix d0(int s, int t) const;
  SparseMatrix d1(int s, int t) const;

  // Weight strata of a block, sorted by weight. Without weights there is a
  // single stratum with an empty weight vector.
  const std::vector<Stratum>& strata(int s, int t) const;
  std::size_t stratum_size(int s, int t, const WeightVector& w) const;
  // Restrictions of d_0, d_1 to the weight-w parts of source and target.
  SparseMatrix d0(int s, int t, const WeightVector& w) const;
  SparseMatrix d1(int s, int t, const WeightVector& w) const;

 private:
  friend AxiomReport check_differential_axioms(const KoszulComplex&, int, std::size_t);
  AxiomReport check_axioms(int max_hodge, std::size_t threads) const;

  struct StrataData {
    std::vector<Stratum> strata;
    std::map<WeightVector, std::size_t> by_weight;
    std::vector<std::uint32_t> local;  // block index → index inside its stratum
  };

  // Index tables on the degree-s monomial basis: shift[(a*n + i)*n + j] is
  // the index of a - e_i + e_j (kNoIndex if a_i = 0) and raise[a*n + l] the
  // index of a + e_l in degree s+1.
  struct PolyMoves {
    std::vector<std::uint32_t> shift, raise;
  };
  static constexpr std::uint32_t kNoIndex = 0xffffffffu;

  std::size_t poly_count(int s) const;
  const PolyMoves& poly_moves(int s) const;
  // Terms of d0 on x_mask (to < 0) and on x_mask y_i (to = j, meaning y_i is
  // traded for y_j), for every mask. Slot mask*(n+1) holds the former, slot
  // mask*(n+1)+1+i the latter.
  struct D0Table {
    struct Entry {
      std::uint32_t mask;
      std::int32_t to;
      std::int64_t coef;
    };
    std::vector<std::uint32_t> offset;
    std::vector<Entry> entries;
  };
  const D0Table& d0_table() const;
  // Calls emit(mask, from, to, coef) for each term of d0(x_mask y^a); the
  // y-part is a with one y_from traded for y_to, or unchanged if from < 0.
  template <class Emit>
  void for_each_d0(std::uint32_t mask, const Exponents& a, Emit&& emit) const {
    for_each_d0(d0_table(), mask, a, emit);
  }
  template <class Emit>
  void for_each_d0(const D0Table& table, std::uint32_t mask, const Exponents& a, Emit&& emit) const;
  std::size_t poly_rank(const Exponents& a, int s) const;
  const std::vector<Exponents>& poly_table(int s) const;
  const StrataData& strata_data(int s, int t) const;
  auto d0_generator(int s) const;
  auto d1_generator(int s) const;
  template <class Gen>
  SparseMatrix build(int s, int t, int ds, int dt, Gen&& gen) const;
  template <class Gen>
  SparseMatrix build_restricted(int s, int t, int ds, int dt, const WeightVector& w, Gen&& gen) const;

  LieAlgebra g_;
  std::size_t n_;
  struct Quad {
    std::uint32_t j, k;
    std::int64_t coef;
  };
  std::vector<std::vector<Quad>> d0x_;  // d0(x_i) = Σ coef x_j x_k (j<k)
  std::vector<std::vector<Quad>> d0y_;  // d0(y_i) = Σ coef y_j x_k
  std::vector<std::vector<std::uint32_t>> subsets_;  // by t, lexicographic
  std::vector<std::uint32_t> subset_rank_;           // mask → rank among its size
  std::vector<std::vector<std::uint64_t>> binom_;

  mutable std::mutex mutex_;
  mutable std::map<int, std::unique_ptr<std::vector<Exponents>>> poly_tables_;
  mutable std::map<int, std::unique_ptr<PolyMoves>> poly_moves_;
  mutable std::unique_ptr<D0Table> d0_table_;
  mutable std::map<std::pair<int, int>, std::unique_ptr<StrataData>> strata_;
};

// Checks d0∘d0 = 0, d1∘d1 = 0 and d0∘d1 + d1∘d0 = 0 as exact matrix
// identities on the truncation s <= max_hodge: every composite whose source
// and target blocks both lie in s <= max_hodge, one weight stratum at a time.
AxiomReport check_differential_axioms(const KoszulComplex& c, int max_hodge, std::size_t threads = 1);

}  // namespace lieseq
