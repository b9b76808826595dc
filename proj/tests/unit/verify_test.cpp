#include <gtest/gtest.h>

#include "lieseq/error.hpp"
#include "lieseq/verify.hpp"

using namespace lieseq;
using namespace lieseq::verify;

namespace {

void expect_all_pass(const std::vector<Verdict>& vs) {
  ASSERT_FALSE(vs.empty());
  for (const auto& v : vs) EXPECT_TRUE(v.pass) << render_line(v);
  EXPECT_TRUE(all_pass(vs));
}

}  // namespace

TEST(Suite, Parse) {
  EXPECT_EQ(parse_suite("sl2"), Suite::Sl2);
  EXPECT_EQ(parse_suite("all"), Suite::All);
  EXPECT_THROW(parse_suite("everything"), DomainError);
}

TEST(Suite, Sl2) {
  Config cfg;
  cfg.primes = {3, 5};
  expect_all_pass(run_suite(Suite::Sl2, cfg));
}

TEST(Suite, Sl2RejectsEvenPrime) {
  Config cfg;
  cfg.primes = {2};
  EXPECT_THROW(run_suite(Suite::Sl2, cfg), DomainError);
}

TEST(Suite, Koszul) { expect_all_pass(run_suite(Suite::Koszul, {})); }

TEST(Suite, Torsion) { expect_all_pass(run_suite(Suite::Torsion, {})); }

TEST(Criterion, OutOfRange) {
  EXPECT_THROW(criterion(0), DomainError);
  EXPECT_THROW(criterion(kCriteria + 1), DomainError);
}

TEST(Render, LineAndJson) {
  Verdict v{"exact-sequence", 5, true, "s=3..8 exact", 1.5};
  EXPECT_EQ(render_line(v), "PASS exact-sequence p=5 s=3..8 exact");
  EXPECT_EQ(render_line(v, true), "PASS exact-sequence p=5 s=3..8 exact [1.5s]");
  v.pass = false;
  v.p = 0;
  EXPECT_EQ(render_line(v).rfind("FAIL exact-sequence", 0), 0u);
  const auto j = to_json({v});
  EXPECT_FALSE(j[0].contains("seconds"));
  EXPECT_TRUE(to_json({v}, true)[0].contains("seconds"));
}
