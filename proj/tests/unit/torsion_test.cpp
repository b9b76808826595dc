#include <gtest/gtest.h>

#include <fstream>

#include <nlohmann/json.hpp>

#include "lieseq/builtins.hpp"
#include "lieseq/error.hpp"
#include "lieseq/torsion.hpp"

using namespace lieseq;
using torsion::Verdict;

namespace {

KoszulComplex integral(std::string_view name) { return KoszulComplex(builtin::by_name(name)); }

nlohmann::json oracle() {
  std::ifstream in(LIESEQ_ORACLE_DIR "/integral_cohomology.json");
  return nlohmann::json::parse(in);
}

std::size_t binom(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

// The oracle is an independent Python/SymPy computation on alternating maps.
TEST(Oracle, IntegralTablesMatch) {
  const auto j = oracle();
  for (const auto& name : {"sl2", "nonabelian2"}) {
    const auto& entry = j.at(name);
    const int N = entry.at("max_hodge").get<int>();
    const auto table = torsion::integral_table(integral(name), {N});
    ASSERT_EQ(table.size(), entry.at("table").size()) << name;
    for (std::size_t k = 0; k < table.size(); ++k) {
      const auto& e = entry.at("table")[k];
      SCOPED_TRACE(std::string(name) + " (" + std::to_string(table[k].s) + "," + std::to_string(table[k].t) + ")");
      EXPECT_EQ(table[k].s, e.at("s").get<int>());
      EXPECT_EQ(table[k].t, e.at("t").get<int>());
      EXPECT_EQ(table[k].free_rank, e.at("free_rank").get<std::size_t>());
      std::vector<std::string> tors;
      for (const auto& q : table[k].torsion) tors.push_back(q.to_string());
      EXPECT_EQ(tors, e.at("torsion").get<std::vector<std::string>>());
    }
    const auto primes = torsion::torsion_primes(table);
    std::map<std::string, int> first;
    for (const auto& [p, s] : primes.first_hodge) first[p.get_str()] = s;
    EXPECT_EQ(first, (entry.at("first_hodge").get<std::map<std::string, int>>())) << name;
  }
}

TEST(Integral, Sl2Examples) {
  const auto c = integral("sl2");
  const auto u = torsion::integral_cohomology(c, 0, 3);
  EXPECT_EQ(u.free_rank, 1u);
  EXPECT_TRUE(u.torsion.empty());
  for (int t = 0; t <= 3; ++t) EXPECT_EQ(torsion::integral_cohomology(c, 1, t).free_rank, 0u);
}

TEST(Integral, ThreeTorsionAppearsEarly) {
  const auto primes = torsion::torsion_primes(integral("sl2"), {4});
  ASSERT_TRUE(primes.first_hodge.count(3));
  EXPECT_LE(primes.first_hodge.at(3), 4);
}

TEST(Integral, AbelianIsFree) {
  const auto c = integral("abelian:2");
  for (const auto& h : torsion::integral_table(c, {4})) {
    EXPECT_EQ(h.free_rank, binom(2, h.t) * (h.s + 1));
    EXPECT_TRUE(h.torsion.empty());
  }
  EXPECT_TRUE(torsion::torsion_primes(integral("abelian:3"), {3}).first_hodge.empty());
}

TEST(Integral, RejectsFields) {
  EXPECT_THROW(torsion::integral_cohomology(KoszulComplex(builtin::sl(2).with_ring(Ring::rationals())), 0, 0),
               DomainError);
}

// Reordering the basis (f, e, h) must not change the groups.
TEST(Integral, IndependentOfBasisOrder) {
  const auto g = builtin::sl(2);
  const std::uint32_t perm[3] = {2, 1, 0};
  std::vector<StructureConstant> cs;
  for (const auto& c : g.constants()) cs.push_back({perm[c.i], perm[c.j], perm[c.k], c.value});
  const LieAlgebra h("sl2-reordered", 3, Ring::integers(), cs, {"f", "e", "h"});
  const auto a = torsion::integral_table(KoszulComplex(g), {4});
  const auto b = torsion::integral_table(KoszulComplex(h), {4});
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].free_rank, b[k].free_rank);
    EXPECT_EQ(a[k].torsion, b[k].torsion);
  }
}

TEST(Ucf, Sl2SmallPrimesMatchBelowTransition) {
  for (const auto& e : torsion::ucf_compare(integral("sl2"), 7, {4})) {
    EXPECT_EQ(e.verdict, Verdict::Match) << e.s << "," << e.t;
    EXPECT_EQ(e.dim_q, e.free_rank);
  }
}

TEST(Ucf, Sl2F5MismatchIsExplainedByTorsion) {
  for (const auto& e : torsion::ucf_compare(integral("sl2"), 5, {4})) {
    EXPECT_NE(e.verdict, Verdict::Violation);
    if (e.s == 4 && (e.t == 1 || e.t == 2)) {
      EXPECT_EQ(e.verdict, Verdict::TorsionExplained);
      EXPECT_GT(e.dim_fp, e.dim_q);
    }
  }
}

TEST(Ucf, FullAuditSl2) {
  const auto c = integral("sl2");
  const auto table = torsion::integral_table(c, {6});
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    for (const auto& e : torsion::ucf_compare(c, table, p, {6})) {
      EXPECT_NE(e.verdict, Verdict::Violation) << "p=" << p << " (" << e.s << "," << e.t << ")";
      EXPECT_EQ(e.dim_fp, e.free_rank + e.torsion_here + e.torsion_next);
      EXPECT_EQ(e.dim_q, e.free_rank);
    }
}

TEST(Ucf, AbelianAlwaysMatches) {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (const auto& e : torsion::ucf_compare(integral("abelian:3"), p, {3})) EXPECT_EQ(e.verdict, Verdict::Match);
}

TEST(PrimePower, Formatting) {
  EXPECT_EQ((torsion::PrimePower{2, 1}).to_string(), "2");
  EXPECT_EQ((torsion::PrimePower{2, 3}).to_string(), "2^3");
  EXPECT_EQ((torsion::PrimePower{3, 2}).value(), 9);
}
