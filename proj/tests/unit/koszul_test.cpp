#include <gtest/gtest.h>

#include <random>

#include "lieseq/builtins.hpp"
#include "lieseq/cochain.hpp"
#include "lieseq/error.hpp"
#include "lieseq/koszul.hpp"

using namespace lieseq;

namespace {

KoszulComplex complex_of(std::string_view name, Ring ring = Ring::rationals()) {
  return KoszulComplex(builtin::by_name(name).with_ring(ring));
}

// x_i (i in xs) times y^a; indices in the algebra's basis order.
Cochain mono(const KoszulComplex& c, std::vector<int> xs, std::vector<int> ys = {}, std::int64_t coef = 1) {
  Cochain out = Cochain::one(c.ring());
  for (int i : xs) {
    Monomial m;
    m.exterior = 1u << i;
    out = out * Cochain::monomial(c.ring(), m);
  }
  for (int i : ys) {
    Monomial m;
    m.poly[i] = 1;
    out = out * Cochain::monomial(c.ring(), m);
  }
  return out.scaled(coef);
}

std::size_t binom(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

constexpr int H = 0, E = 1, F = 2;  // sl2 basis; x_0 = x_h, x_- = x_e, x_+ = x_f

}  // namespace

TEST(Basis, SizesMatchBinomials) {
  for (const auto& name : {"sl2", "sl3", "nonabelian2", "abelian:3"}) {
    const auto c = complex_of(name);
    const std::size_t n = c.n();
    for (int s = 0; s <= 4; ++s)
      for (int t = 0; t <= static_cast<int>(n); ++t)
        EXPECT_EQ(c.block_size(s, t), binom(n, t) * binom(s + n - 1, n - 1)) << name << " " << s << "," << t;
  }
}

TEST(Basis, Sl2Examples) {
  const auto c = complex_of("sl2");
  const auto top = c.block_basis(0, 3);
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(top[0].exterior, 0b111u);
  EXPECT_EQ(c.block_basis(1, 1).size(), 9u);
  const auto quad = c.block_basis(2, 0);
  ASSERT_EQ(quad.size(), 6u);
  for (const auto& m : quad) {
    EXPECT_EQ(m.s(), 2);
    EXPECT_EQ(m.t(), 0);
  }
}

TEST(Basis, IndexRoundTripAndOrder) {
  const auto c = complex_of("sl3");
  for (int s = 0; s <= 3; ++s)
    for (int t = 0; t <= 3; ++t) {
      const auto basis = c.block_basis(s, t);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        EXPECT_EQ(c.index_of(basis[i]), i);
        EXPECT_EQ(c.element(s, t, i), basis[i]);
      }
    }
  EXPECT_THROW(c.block_basis(0, 9), DomainError);
}

TEST(D0, Sl2BetaTable) {
  const auto c = complex_of("sl2");
  EXPECT_EQ(apply_d0(c, mono(c, {H})), mono(c, {F}) * mono(c, {E}));
  EXPECT_EQ(apply_d0(c, mono(c, {F})), mono(c, {H, F}, {}, 2));
  EXPECT_EQ(apply_d0(c, mono(c, {}, {H})), mono(c, {F}, {E}) - mono(c, {E}, {F}));
  EXPECT_EQ(apply_d0(c, mono(c, {}, {F})), mono(c, {F}, {H}, -2) + mono(c, {H}, {F}, 2));
}

TEST(D0, Nonabelian2) {
  const auto c = complex_of("nonabelian2");
  // d0(E) = E h - H e, with basis (h, e).
  EXPECT_EQ(apply_d0(c, mono(c, {}, {1})), mono(c, {0}, {1}) - mono(c, {1}, {0}));
}

TEST(D0, AbelianIsZero) {
  const auto c = complex_of("abelian:3");
  for (int s = 0; s <= 3; ++s)
    for (int t = 0; t < 3; ++t) EXPECT_TRUE(c.d0(s, t).is_zero());
}

TEST(D1, Sl2TopClass) {
  const auto c = complex_of("sl2");
  const auto expected = mono(c, {}, {H}) * mono(c, {E, F}) - mono(c, {H}) * mono(c, {}, {E}) * mono(c, {F}) +
                        mono(c, {H, E}) * mono(c, {}, {F});
  EXPECT_EQ(apply_d1(c, mono(c, {H, E, F})), expected);
}

TEST(D1, VanishesOnPolynomials) {
  for (const auto& name : {"sl2", "nonabelian2", "sl3"}) {
    const auto c = complex_of(name);
    for (int s = 0; s <= 3; ++s) EXPECT_TRUE(c.d1(s, 0).is_zero()) << name;
  }
}

TEST(D1, Nonabelian2Transgression) {
  for (std::uint32_t p : {3u, 5u}) {
    const auto c = complex_of("nonabelian2", Ring::prime_field(p));
    std::vector<int> ys(p - 1, 1);
    // d1(e E^{p-1}) = E^p; the y's are d1-closed.
    EXPECT_EQ(apply_d1(c, mono(c, {1}, ys)), mono(c, {}, std::vector<int>(p, 1)));
  }
}

TEST(Matrices, AgreeWithTermExpansion) {
  std::mt19937 rng(5);
  for (const auto& name : {"sl2", "sl3", "sp4"}) {
    const auto c = complex_of(name);
    for (int s = 0; s <= 2; ++s)
      for (int t = 0; t < static_cast<int>(c.n()); ++t) {
        const auto d0 = c.d0(s, t);
        const auto d1 = s < 2 && t > 0 ? c.d1(s, t) : SparseMatrix();
        std::uniform_int_distribution<std::size_t> pick(0, c.block_size(s, t) - 1);
        for (int k = 0; k < 10; ++k) {
          const auto j = pick(rng);
          const auto x = Cochain::monomial(c.ring(), c.element(s, t, j));
          SparseVector col;
          for (const auto& e : d0.column(j)) col.push_back({e.row, e.value});
          EXPECT_EQ(from_vector(c, col, s, t + 1), apply_d0(c, x)) << name;
          if (d1.cols()) {
            SparseVector col1;
            for (const auto& e : d1.column(j)) col1.push_back({e.row, e.value});
            EXPECT_EQ(from_vector(c, col1, s + 1, t - 1), apply_d1(c, x)) << name;
          }
        }
      }
  }
}

TEST(Derivation, LeibnizRuleOnSampledPairs) {
  std::mt19937 rng(9);
  for (const auto& name : {"sl2", "nonabelian2", "sl3"}) {
    const auto c = complex_of(name);
    auto sample = [&](int s, int t) {
      std::uniform_int_distribution<std::size_t> pick(0, c.block_size(s, t) - 1);
      return Cochain::monomial(c.ring(), c.element(s, t, pick(rng)));
    };
    for (int k = 0; k < 40; ++k) {
      const int sa = k % 3, ta = k % 2, sb = (k / 3) % 2, tb = 1 + k % 2;
      const auto a = sample(sa, ta), b = sample(sb, tb);
      const int sign = (2 * sa + ta) % 2 ? -1 : 1;
      EXPECT_EQ(apply_d0(c, a * b), apply_d0(c, a) * b + (a * apply_d0(c, b)).scaled(sign)) << name;
      EXPECT_EQ(apply_d1(c, a * b), apply_d1(c, a) * b + (a * apply_d1(c, b)).scaled(sign)) << name;
    }
  }
}

TEST(Axioms, DirectProductsVanishOnSmallBlocks) {
  for (const auto& ring : {Ring::integers(), Ring::prime_field(3)}) {
    const auto c = complex_of("sl2", ring);
    for (int s = 0; s <= 4; ++s)
      for (int t = 0; t <= 3; ++t) {
        if (t + 2 <= 3) { EXPECT_TRUE(product_is_zero(c.d0(s, t + 1), c.d0(s, t), ring)); }
        if (t >= 2) { EXPECT_TRUE(product_is_zero(c.d1(s + 1, t - 1), c.d1(s, t), ring)); }
        if (t >= 1 && t < 3) {
          EXPECT_TRUE(sum_of_products_is_zero(c.d0(s + 1, t - 1), c.d1(s, t), c.d1(s, t + 1), c.d0(s, t), ring));
        }
      }
  }
}

TEST(Axioms, BuiltinsOverAllRings) {
  struct Case {
    const char* name;
    int max_hodge;
  };
  for (const auto& cs : {Case{"sl2", 10}, Case{"nonabelian2", 10}, Case{"abelian:3", 8}, Case{"sl3", 5},
                         Case{"sp4", 3}, Case{"so5", 3}, Case{"abelian:1+nonabelian2", 8}})
    for (const auto& ring : {Ring::integers(), Ring::rationals(), Ring::prime_field(3), Ring::prime_field(5),
                             Ring::prime_field(7)}) {
      const auto rep = check_differential_axioms(complex_of(cs.name, ring), cs.max_hodge);
      EXPECT_TRUE(rep.ok()) << cs.name << " over " << ring.name() << ": " << rep.failure;
      EXPECT_GT(rep.blocks, 0u);
    }
}

TEST(Axioms, ThreadCountDoesNotChangeTheReport) {
  const auto c = complex_of("sl3", Ring::integers());
  const auto a = check_differential_axioms(c, 4, 1), b = check_differential_axioms(c, 4, 4);
  EXPECT_EQ(a.blocks, b.blocks);
  EXPECT_EQ(a.columns, b.columns);
  EXPECT_EQ(a.failure, b.failure);
}

TEST(Weights, GeneratorWeights) {
  const auto c = complex_of("sl2");
  const std::uint32_t p = 5;
  Monomial ypp;
  ypp.poly[F] = p;
  EXPECT_EQ(c.weight_of(ypp), (WeightVector{2 * p}));
  for (const auto& term : {mono(c, {}, {H, H}), mono(c, {}, {E, F})})
    for (const auto& [m, coef] : term.terms()) EXPECT_EQ(c.weight_of(m), (WeightVector{0}));
  // Without a grading every monomial sits in the single stratum of weight ().
  EXPECT_TRUE(complex_of("so3").weight_of(ypp).empty());
}

TEST(Weights, DifferentialsPreserveWeight) {
  for (const auto& name : {"sl2", "nonabelian2", "sl3"}) {
    const auto c = complex_of(name);
    for (int s = 0; s <= 3; ++s)
      for (int t = 0; t < static_cast<int>(c.n()); ++t) {
        const auto d0 = c.d0(s, t);
        for (const auto& tr : d0.triplets())
          EXPECT_EQ(c.weight_of(c.element(s, t + 1, tr.row)), c.weight_of(c.element(s, t, tr.col))) << name;
        if (t > 0) {
          for (const auto& tr : c.d1(s, t).triplets())
            EXPECT_EQ(c.weight_of(c.element(s + 1, t - 1, tr.row)), c.weight_of(c.element(s, t, tr.col))) << name;
        }
        std::size_t total = 0;
        for (const auto& st : c.strata(s, t)) total += c.stratum_size(s, t, st.weight);
        EXPECT_EQ(total, c.block_size(s, t));
      }
  }
}
