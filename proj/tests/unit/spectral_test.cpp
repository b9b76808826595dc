#include <gtest/gtest.h>

#include "lieseq/builtins.hpp"
#include "lieseq/error.hpp"
#include "lieseq/invariants.hpp"
#include "lieseq/spectral.hpp"

using namespace lieseq;
using spectral::PageReport;

namespace {

KoszulComplex complex_of(std::string_view name, Ring ring = Ring::rationals()) {
  return KoszulComplex(builtin::by_name(name).with_ring(ring));
}

std::vector<std::size_t> column(const PageReport& p, int s) {
  std::vector<std::size_t> out;
  for (int t = 0; t <= p.n; ++t) out.push_back(p.at(s, t));
  return out;
}

void expect_point(const PageReport& p) {
  for (int s = 0; s <= p.max_hodge; ++s)
    for (int t = 0; t <= p.n; ++t)
      if (p.valid(s, t)) { EXPECT_EQ(p.at(s, t), s == 0 && t == 0 ? 1u : 0u) << "E" << p.r << "^{" << s << "," << t << "}"; }
}

}  // namespace

TEST(E1, Sl2OverQ) {
  const auto e1 = spectral::compute_E1(complex_of("sl2"), {8});
  for (int s = 0; s <= 8; ++s)
    for (int t = 0; t <= 3; ++t) EXPECT_EQ(e1.at(s, t), s % 2 == 0 && (t == 0 || t == 3) ? 1u : 0u) << s << "," << t;
}

TEST(E1, Sl2OverF5PhaseTransition) {
  const auto e1 = spectral::compute_E1(complex_of("sl2", Ring::prime_field(5)), {5});
  EXPECT_EQ(column(e1, 4), (std::vector<std::size_t>{1, 3, 3, 1}));
  EXPECT_EQ(column(e1, 5), (std::vector<std::size_t>{3, 4, 1, 0}));
}

TEST(E1, RejectsIntegers) { EXPECT_THROW(spectral::compute_E1(complex_of("sl2", Ring::integers()), {2}), DomainError); }

TEST(E1, AbelianIsE0) {
  const auto e1 = spectral::compute_E1(complex_of("abelian:2"), {3});
  for (int s = 0; s <= 3; ++s) EXPECT_EQ(column(e1, s), (std::vector<std::size_t>{static_cast<std::size_t>(s) + 1, 2u * (s + 1), static_cast<std::size_t>(s) + 1}));
}

TEST(Pages, Sl2OverQCollapsesAtE3) {
  const auto pages = spectral::compute_pages(complex_of("sl2"), {8}, 3);
  ASSERT_EQ(pages.size(), 3u);
  EXPECT_EQ(pages[0].dims, pages[1].dims);
  EXPECT_EQ(pages[1].rank_out(0, 3), 1u);
  expect_point(pages[2]);
}

TEST(Pages, Nonabelian2OverF3) {
  const auto pages = spectral::compute_pages(complex_of("nonabelian2", Ring::prime_field(3)), {6}, 2);
  // Λ(h, eE^2) ⊗ F3[H, E^3]: generators at (0,1), (2,1), (1,0), (3,0).
  const std::vector<std::vector<std::size_t>> expected = {{1, 1, 0}, {1, 1, 0}, {1, 2, 1}, {2, 3, 1},
                                                          {2, 3, 1}, {2, 4, 2}, {3, 5, 2}};
  for (int s = 0; s <= 6; ++s) EXPECT_EQ(column(pages[0], s), expected[s]) << "s=" << s;
  expect_point(pages[1]);
}

TEST(Pages, Sl3TransgressionsAreNonzero) {
  const auto pages = spectral::compute_pages(complex_of("sl3"), {4}, 4);
  ASSERT_GE(pages.size(), 3u);
  EXPECT_GT(pages[1].rank_out(0, 3), 0u);  // d2(u3) = c2
  EXPECT_GT(pages[2].rank_out(0, 5), 0u);  // d3(u5) = c3
}

TEST(Pages, ConvergeToPointAndCollapseMonotonically) {
  struct Case {
    const char* name;
    Ring ring;
    int max_hodge;
  };
  for (const auto& cs : {Case{"sl2", Ring::rationals(), 8}, Case{"sl2", Ring::prime_field(3), 8},
                         Case{"sl2", Ring::prime_field(5), 9}, Case{"nonabelian2", Ring::prime_field(5), 10},
                         Case{"abelian:2", Ring::rationals(), 5}, Case{"so3", Ring::prime_field(7), 8},
                         Case{"abelian:1+nonabelian2", Ring::prime_field(3), 6}}) {
    const auto pages = spectral::compute_pages(complex_of(cs.name, cs.ring), {cs.max_hodge});
    ASSERT_FALSE(pages.empty());
    SCOPED_TRACE(std::string(cs.name) + " over " + cs.ring.name());
    expect_point(pages.back());
    for (std::size_t r = 1; r < pages.size(); ++r)
      for (int s = 0; s <= cs.max_hodge; ++s)
        for (int t = 0; t <= pages[r].n; ++t)
          if (pages[r].valid(s, t)) { EXPECT_LE(pages[r].at(s, t), pages[r - 1].at(s, t)); }
  }
}

TEST(Pages, IndependentOfThreadsAndWeights) {
  const auto c = complex_of("sl3", Ring::prime_field(5));
  spectral::Options a, b, d;
  b.threads = 4;
  d.use_weights = false;
  const auto pa = spectral::compute_pages(c, {3}, 0, a), pb = spectral::compute_pages(c, {3}, 0, b),
             pd = spectral::compute_pages(c, {3}, 0, d);
  ASSERT_EQ(pa.size(), pb.size());
  ASSERT_EQ(pa.size(), pd.size());
  for (std::size_t r = 0; r < pa.size(); ++r) {
    EXPECT_EQ(pa[r].dims, pb[r].dims);
    EXPECT_EQ(pa[r].dims, pd[r].dims);
    EXPECT_EQ(pa[r].ranks_out, pb[r].ranks_out);
  }
}

TEST(Pages, ValidRegion) {
  PageReport p;
  p.r = 3;
  p.max_hodge = 6;
  p.n = 3;
  EXPECT_TRUE(p.valid(4, 0));
  EXPECT_FALSE(p.valid(5, 0));
  EXPECT_FALSE(p.valid(0, 4));
  EXPECT_EQ(spectral::stable_page(3), 3);
}

TEST(Tensor, DirectSumIsConvolution) {
  for (const auto& ring : {Ring::rationals(), Ring::prime_field(3)}) {
    constexpr int N = 6;
    const auto a = spectral::compute_E1(complex_of("abelian:1", ring), {N});
    const auto b = spectral::compute_E1(complex_of("nonabelian2", ring), {N});
    const auto ab = spectral::compute_E1(complex_of("abelian:1+nonabelian2", ring), {N});
    for (int s = 0; s <= N; ++s)
      for (int t = 0; t <= 3; ++t) {
        std::size_t sum = 0;
        for (int s1 = 0; s1 <= s; ++s1)
          for (int t1 = 0; t1 <= std::min(t, 1); ++t1)
            if (t - t1 <= 2) sum += a.at(s1, t1) * b.at(s - s1, t - t1);
        EXPECT_EQ(ab.at(s, t), sum) << ring.name() << " (" << s << "," << t << ")";
      }
  }
}

TEST(Stratify, Sl2OverQOnlyWeightZero) {
  const auto c = complex_of("sl2");
  const auto rep = spectral::stratify(c, {6});
  const auto e1 = spectral::compute_E1(c, {6});
  for (const auto& st : rep.strata)
    for (int s = 0; s <= 6; ++s)
      for (int t = 0; t <= 3; ++t) {
        if (st.weight != WeightVector{0}) EXPECT_EQ(st.pages[0].at(s, t), 0u);
        else EXPECT_EQ(st.pages[0].at(s, t), e1.at(s, t));
      }
}

TEST(Stratify, FiniteFieldWeightsAreMultiplesOfP) {
  struct Case {
    const char* name;
    std::uint32_t p;
  };
  for (const auto& cs : {Case{"nonabelian2", 3}, Case{"sl2", 5}, Case{"sl2", 7}}) {
    const auto c = complex_of(cs.name, Ring::prime_field(cs.p));
    const auto rep = spectral::stratify(c, {static_cast<int>(cs.p) + 2});
    const auto e1 = spectral::compute_E1(c, {static_cast<int>(cs.p) + 2});
    std::vector<std::vector<std::size_t>> sum(e1.dims.size(), std::vector<std::size_t>(e1.n + 1, 0));
    for (const auto& st : rep.strata)
      for (int s = 0; s <= e1.max_hodge; ++s)
        for (int t = 0; t <= e1.n; ++t) {
          sum[s][t] += st.pages[0].at(s, t);
          if (st.pages[0].at(s, t)) { EXPECT_EQ(st.weight[0] % static_cast<std::int64_t>(cs.p), 0) << cs.name; }
        }
    EXPECT_EQ(sum, e1.dims) << cs.name;
  }
}

TEST(Stratify, Sl2F5Weight10HoldsMuPlus) {
  const auto rep = spectral::stratify(complex_of("sl2", Ring::prime_field(5)), {4});
  bool found = false;
  for (const auto& st : rep.strata)
    if (st.weight == WeightVector{10}) {
      found = true;
      EXPECT_GE(st.pages[0].at(4, 2), 1u);
    }
  EXPECT_TRUE(found);
}

TEST(Stratify, NeedsWeights) { EXPECT_THROW(spectral::stratify(complex_of("so3"), {2}), DomainError); }

TEST(EulerPoincare, Examples) {
  const auto c = complex_of("sl2", Ring::prime_field(5));
  for (int s : {4, 5}) {
    const auto ep = spectral::euler_poincare_check(c, s);
    EXPECT_TRUE(ep.ok());
    EXPECT_EQ(ep.e1_sum, 0);
  }
  for (const auto& name : {"sl2", "sl3", "nonabelian2", "abelian:3", "so4"}) {
    const auto ep = spectral::euler_poincare_check(complex_of(name), 0);
    EXPECT_EQ(ep.e0_sum, 0) << name;
    EXPECT_EQ(ep.e1_sum, 0) << name;
  }
}

TEST(Zigzag, Sl2TransgressionHitsKappa) {
  const auto c = complex_of("sl2");
  Monomial u;
  u.exterior = 0b111;
  const auto omega = Cochain::monomial(c.ring(), u);
  const auto d2 = spectral::zigzag(c, omega, 2);
  ASSERT_TRUE(d2);
  EXPECT_EQ(d2->bidegree(), (std::pair{2, 0}));
  EXPECT_TRUE(apply_d0(c, *d2).is_zero());
  // E_1^{2,0} is spanned by the Killing quadratic; d2(u) must be a nonzero multiple.
  const auto kappa = from_polynomial(c, killing_quadratic(c.algebra()));
  const auto& [m, coef] = *kappa.terms().begin();
  ASSERT_NE(d2->coefficient(m), 0);
  EXPECT_EQ(d2->scaled(coef / d2->coefficient(m)), kappa);
}

TEST(Zigzag, AgreesWithPageRanksOnNonabelian2) {
  // x_e E^{p-1} survives to E_1 and d_1 of it is E^p ≠ 0.
  const auto c = complex_of("nonabelian2", Ring::prime_field(3));
  Monomial m;
  m.exterior = 0b10;
  m.poly[1] = 2;
  const auto d1 = spectral::zigzag(c, Cochain::monomial(c.ring(), m), 1);
  ASSERT_TRUE(d1);
  EXPECT_FALSE(d1->is_zero());
}

TEST(Zigzag, RejectsNonCocycles) {
  const auto c = complex_of("sl2");
  Monomial m;
  m.poly[0] = 1;
  EXPECT_THROW(spectral::zigzag(c, Cochain::monomial(c.ring(), m), 2), DomainError);
}

TEST(InducedD1, Sl2F5) {
  // λ_i at (p-1, 1) map isomorphically onto s_i at (p, 0).
  const auto c = complex_of("sl2", Ring::prime_field(5));
  EXPECT_EQ(spectral::induced_d1_rank(c, 4, 1), 3u);
}
