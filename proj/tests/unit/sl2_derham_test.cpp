#include <gtest/gtest.h>

#include "lieseq/error.hpp"
#include "lieseq/sl2_derham.hpp"
#include "lieseq/spectral.hpp"

using namespace lieseq;
using namespace lieseq::sl2;

namespace {

void expect_all_pass(const std::vector<Check>& checks) {
  ASSERT_FALSE(checks.empty());
  for (const auto& c : checks) EXPECT_TRUE(c.pass) << c.id << " p=" << c.p << ": " << c.witness;
}

}  // namespace

TEST(Beta, EigenvalueIsWeight) {
  // y_0 y_+^2 has weight 4.
  const auto f = ScalarPoly::monomial(7, {1, 0, 2});
  EXPECT_EQ(beta0(f), f.scaled(4));
  EXPECT_EQ(weight_of({1, 0, 2}), 4);
}

TEST(Beta, OperatorIdentities) {
  for (std::uint32_t p : {3u, 5u, 7u}) expect_all_pass(check_beta_operators(p, 3));
}

TEST(Calculus, KappaIsInvariant) {
  for (std::uint32_t p : {3u, 5u, 7u}) EXPECT_TRUE(grad(ScalarPoly::kappa(p)).is_zero());
}

TEST(Calculus, ComplexIdentities) {
  for (std::uint32_t p : {3u, 5u, 7u}) expect_all_pass(check_calculus_identities(p, p + 1));
}

TEST(Calculus, FormDegreesAreEnforced) {
  const VectorPoly two(FormDegree::Two, 5);
  const VectorPoly one(FormDegree::One, 5);
  EXPECT_THROW(curl(two), DomainError);
  EXPECT_THROW(div(one), DomainError);
}

TEST(Calculus, AgreesWithKoszul) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const auto c = check_koszul_agreement(p, p + 2);
    EXPECT_TRUE(c.pass) << c.witness;
  }
}

TEST(Calculus, CochainTranslationRoundTrips) {
  const auto c = sl2_complex(5);
  const auto f = ScalarPoly::kappa(5).pow(2) + ScalarPoly::monomial(5, {0, 1, 3}, 2);
  EXPECT_EQ(scalar_from_cochain(c, to_cochain(c, f, 3), 3), f);
  const VectorPoly v(FormDegree::Two, f, ScalarPoly::y(5, kMinus), ScalarPoly(5));
  EXPECT_EQ(vector_from_cochain(c, to_cochain(c, v)), v);
}

TEST(H0, InvariantRing) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const auto rep = h0_structure(p, 2 * static_cast<int>(p));
    EXPECT_TRUE(rep.frobenius_relation) << p;
    EXPECT_TRUE(rep.ok()) << p;
    ASSERT_EQ(rep.degrees.size(), 2 * p + 1);
    EXPECT_EQ(rep.degrees[0].dim_h0, 1u);
    EXPECT_EQ(rep.degrees[1].dim_h0, 0u);
    EXPECT_EQ(rep.degrees[2].dim_h0, 1u);  // κ
    EXPECT_EQ(rep.degrees[p].dim_h0, 3u);  // s_0, s_-, s_+
  }
}

TEST(Fundamental, Relations) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const auto rep = fundamental_relations(p);
    EXPECT_TRUE(rep.ok()) << p;
    ASSERT_TRUE(rep.witness);
    EXPECT_EQ(div(*rep.witness), ScalarPoly::kappa(p).pow((p - 1) / 2));
    EXPECT_TRUE(rep.nonvanishing);
    for (bool b : rep.s_relations) EXPECT_TRUE(b);
    expect_all_pass(rep.checks());
  }
}

TEST(Fundamental, PrimeCap) { EXPECT_THROW(fundamental_relations(17), DomainError); }

TEST(GeneratorTable, SeventeenRows) {
  const auto rows = generator_table(5);
  EXPECT_EQ(rows.size(), 17u);
  const auto c = sl2_complex(5);
  for (const auto& r : rows) {
    EXPECT_EQ(r.rep.bidegree(), (std::pair{r.s, r.t})) << r.name;
    EXPECT_TRUE(apply_d0(c, r.rep).is_zero()) << r.name;
  }
}

TEST(GeneratorTable, AuditAtFiveAndSeven) {
  for (std::uint32_t p : {5u, 7u}) {
    const auto audit = audit_generator_table(p);
    EXPECT_FALSE(audit.partial);
    for (const auto& r : audit.rows) EXPECT_TRUE(r.ok()) << r.name << " p=" << p;
    EXPECT_TRUE(audit.mu_basis);
    EXPECT_TRUE(audit.f_gamma_basis);
    EXPECT_TRUE(audit.lambda_iso);
    EXPECT_TRUE(audit.ok());
  }
  EXPECT_TRUE(audit_generator_table(3).partial);
}

TEST(GeneratorTable, ClassRankMatchesE1AtPMinusOneTwo) {
  const std::uint32_t p = 5;
  const auto c = sl2_complex(p);
  std::vector<Cochain> mus;
  for (const auto& r : generator_table(p))
    if (r.s == static_cast<int>(p) - 1 && r.t == 2) mus.push_back(r.rep);
  const auto e1 = spectral::compute_E1(c, {static_cast<int>(p)});
  EXPECT_EQ(class_rank(c, p - 1, 2, mus), e1.at(p - 1, 2));
}

TEST(Weights, Lemmas) {
  for (std::uint32_t p : {3u, 5u, 7u}) expect_all_pass(weight_lemmas(p, p + 1));
}

TEST(E2, Description) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const auto c = e2_description(p, 2 * static_cast<int>(p));
    EXPECT_TRUE(c.pass) << c.witness;
  }
}

TEST(ExactSequence, FromPMinusTwo) {
  for (std::uint32_t p : {5u, 7u})
    for (int s = static_cast<int>(p) - 2; s <= static_cast<int>(p) + 3; ++s) {
      const auto c = exact_sequence(p, s);
      EXPECT_TRUE(c.pass) << "p=" << p << " s=" << s << ": " << c.witness;
    }
}

TEST(Sufficiency, ReportsRowsWithoutAsserting) {
  const auto rep = generator_sufficiency(5, 6);
  EXPECT_EQ(rep.p, 5u);
  EXPECT_FALSE(rep.rows.empty());
  for (const auto& r : rep.rows) EXPECT_LE(r.dim_generated, r.dim_e1);
  if (rep.first_gap) { EXPECT_LT(rep.first_gap->dim_generated, rep.first_gap->dim_e1); }
}
