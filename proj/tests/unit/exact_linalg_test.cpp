#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "lieseq/error.hpp"
#include "lieseq/exact_linalg.hpp"

using namespace lieseq;
using namespace lieseq::linalg;

namespace {

SparseMatrix dense(const std::vector<std::vector<std::int64_t>>& rows) { return SparseMatrix::from_dense(rows); }

bool annihilates(const SparseMatrix& m, const SparseVector& v, const Ring& ring) { return apply(m, v, ring).empty(); }

// Determinant of a square integer matrix by cofactor expansion; fine for k <= 4.
mpz_class det(const std::vector<std::vector<mpz_class>>& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  mpz_class out = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<mpz_class>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<mpz_class> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    out += (j % 2 ? -1 : 1) * a[0][j] * det(minor);
  }
  return out;
}

void combinations(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    combinations(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// gcd of all k×k minors.
mpz_class determinantal_divisor(const std::vector<std::vector<std::int64_t>>& m, std::size_t k) {
  std::vector<std::vector<std::size_t>> rs, cs;
  std::vector<std::size_t> cur;
  combinations(m.size(), k, 0, cur, rs);
  combinations(m[0].size(), k, 0, cur, cs);
  mpz_class g = 0;
  for (const auto& r : rs)
    for (const auto& c : cs) {
      std::vector<std::vector<mpz_class>> sub(k, std::vector<mpz_class>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[r[i]][c[j]];
      mpz_class d = det(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  return g;
}

std::vector<std::vector<std::int64_t>> random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<std::vector<std::int64_t>> m(r, std::vector<std::int64_t>(c));
  for (auto& row : m)
    for (auto& x : row) x = dist(rng);
  return m;
}

std::size_t p_count(const std::vector<mpz_class>& torsion, std::uint32_t p) {
  std::size_t n = 0;
  for (const auto& d : torsion) n += d % p == 0;
  return n;
}

}  // namespace

TEST(RankKernel, IdentityOverF5) {
  const auto rk = rank_and_kernel(SparseMatrix::identity(2), Ring::prime_field(5));
  EXPECT_EQ(rk.rank, 2u);
  EXPECT_TRUE(rk.kernel.empty());
}

TEST(RankKernel, ZeroMatrixOverQ) {
  const auto rk = rank_and_kernel(SparseMatrix(3, 4), Ring::rationals());
  EXPECT_EQ(rk.rank, 0u);
  EXPECT_EQ(rk.kernel.size(), 4u);
}

TEST(RankKernel, RankOneOverF5) {
  const auto ring = Ring::prime_field(5);
  const auto m = dense({{1, 2}, {2, 4}});
  const auto rk = rank_and_kernel(m, ring);
  ASSERT_EQ(rk.rank, 1u);
  ASSERT_EQ(rk.kernel.size(), 1u);
  EXPECT_TRUE(annihilates(m, rk.kernel[0], ring));
  // Proportional to (-2, 1) = (3, 1) mod 5.
  mpq_class x = 0, y = 0;
  for (const auto& e : rk.kernel[0]) (e.index == 0 ? x : y) = e.value;
  EXPECT_EQ(ring.normalize(x - 3 * y), 0);
}

TEST(RankKernel, RejectsIntegers) { EXPECT_THROW(rank_and_kernel(SparseMatrix::identity(2), Ring::integers()), DomainError); }

TEST(RankKernel, RandomKernelsAreIndependentAndAnnihilated) {
  std::mt19937 rng(7);
  for (const auto& ring : {Ring::rationals(), Ring::prime_field(3), Ring::prime_field(7)})
    for (int trial = 0; trial < 20; ++trial) {
      // Rank-deficient by construction: product of 6x3 and 3x7.
      const auto a = random_matrix(rng, 6, 3, -3, 3), b = random_matrix(rng, 3, 7, -3, 3);
      const auto m = multiply(dense(a), dense(b), Ring::integers()).over(ring);
      const auto rk = rank_and_kernel(m, ring);
      EXPECT_EQ(rk.rank + rk.kernel.size(), m.cols());
      EXPECT_LE(rk.rank, 3u);
      for (const auto& v : rk.kernel) EXPECT_TRUE(annihilates(m, v, ring));
      std::vector<Triplet> trip;
      for (std::uint32_t j = 0; j < rk.kernel.size(); ++j)
        for (const auto& e : rk.kernel[j]) {
          ASSERT_EQ(e.value.get_den(), 1);
          trip.push_back({e.index, j, ring.normalize(e.value).get_num().get_si()});
        }
      EXPECT_EQ(rank(SparseMatrix::from_triplets(m.cols(), rk.kernel.size(), trip), ring), rk.kernel.size());
    }
}

TEST(Solve, FindsPreimageOrReportsNone) {
  const auto ring = Ring::rationals();
  const auto m = dense({{1, 1}, {0, 2}, {1, 3}});
  const SparseVector in_span = {{0, 3}, {1, 4}, {2, 7}};
  const auto x = solve(m, in_span, ring);
  ASSERT_TRUE(x);
  EXPECT_EQ(apply(m, *x, ring).size(), 3u);
  const auto back = apply(m, *x, ring);
  for (const auto& e : back) EXPECT_EQ(e.value, e.index == 0 ? 3 : e.index == 1 ? 4 : 7);
  EXPECT_FALSE(solve(m, SparseVector{{0, 1}}, ring));
}

TEST(Smith, SpecExamples) {
  EXPECT_EQ(smith_normal_form(dense({{2, 0}, {0, 0}})).invariants, (std::vector<mpz_class>{2}));
  EXPECT_EQ(smith_normal_form(dense({{2, 4}, {6, 8}})).invariants, (std::vector<mpz_class>{2, 4}));
  EXPECT_TRUE(smith_normal_form(SparseMatrix(0, 0)).invariants.empty());
}

TEST(Smith, DeterminantalDivisorsAndPermutationInvariance) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_matrix(rng, 3, 4, -6, 6);
    const auto snf = smith_normal_form(dense(a));
    mpz_class prod = 1;
    for (std::size_t k = 1; k <= 3; ++k) {
      const mpz_class dk = determinantal_divisor(a, k);
      if (k <= snf.rank()) {
        prod *= snf.invariants[k - 1];
        EXPECT_EQ(prod, dk) << "k = " << k;
      } else {
        EXPECT_EQ(dk, 0) << "k = " << k;
      }
    }
    for (std::size_t k = 1; k < snf.rank(); ++k) EXPECT_EQ(snf.invariants[k] % snf.invariants[k - 1], 0);

    std::vector<std::uint32_t> rp(3), cp(4);
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    EXPECT_EQ(smith_normal_form(dense(a).permuted(rp, cp)).invariants, snf.invariants);
  }
}

TEST(Cohomology, SpecExamples) {
  const auto zero = cohomology_at(SparseMatrix(3, 0), SparseMatrix(0, 3), Ring::rationals());
  EXPECT_EQ(zero.dimension, 3u);

  const auto two = cohomology_at(dense({{2}}), SparseMatrix(0, 1), Ring::integers());
  EXPECT_EQ(two.dimension, 0u);
  EXPECT_EQ(two.torsion, (std::vector<mpz_class>{2}));
}

TEST(Cohomology, RejectsNonComplex) {
  EXPECT_THROW(cohomology_at(dense({{1}}), dense({{1}}), Ring::rationals(), "block (1,2)"), StructuralError);
  try {
    cohomology_at(dense({{1}}), dense({{1}}), Ring::rationals(), "block (1,2)");
  } catch (const StructuralError& e) {
    EXPECT_NE(std::string(e.what()).find("block (1,2)"), std::string::npos);
  }
}

// A random Z complex C0 → C1 → C2 → 0, built as D2·U⁻¹ and U·D1 with U
// unimodular, checked against universal coefficients at every degree.
TEST(Cohomology, UniversalCoefficientsOnRandomComplexes) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> small(-4, 4), pick(0, 5);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t m = 6;
    // D1 hits coordinates 0..2, D2 reads coordinates 3..5.
    std::vector<std::vector<std::int64_t>> d1(m, std::vector<std::int64_t>(3, 0)), d2(4, std::vector<std::int64_t>(m, 0));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) d1[i][j] = small(rng);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 3; j < m; ++j) d2[i][j] = small(rng);
    // U = product of elementary operations; U⁻¹ in reverse.
    auto u = SparseMatrix::identity(m), uinv = SparseMatrix::identity(m);
    for (int k = 0; k < 8; ++k) {
      const std::uint32_t i = pick(rng), j = (i + 1 + pick(rng) % (m - 1)) % m;
      const int c = small(rng);
      const auto e = SparseMatrix::from_triplets(m, m, {{0, 0, 1}, {1, 1, 1}, {2, 2, 1}, {3, 3, 1}, {4, 4, 1}, {5, 5, 1}, {i, j, c}});
      const auto einv = SparseMatrix::from_triplets(m, m, {{0, 0, 1}, {1, 1, 1}, {2, 2, 1}, {3, 3, 1}, {4, 4, 1}, {5, 5, 1}, {i, j, -c}});
      u = multiply(e, u, Ring::integers());
      uinv = multiply(uinv, einv, Ring::integers());
    }
    const auto a = multiply(u, dense(d1), Ring::integers());
    const auto b = multiply(dense(d2), uinv, Ring::integers());
    ASSERT_TRUE(product_is_zero(b, a, Ring::integers()));

    const SparseMatrix none_in(3, 0), none_out(0, 4);
    const CohomologyGroup z[3] = {cohomology_at(none_in, a, Ring::integers()), cohomology_at(a, b, Ring::integers()),
                                  cohomology_at(b, none_out, Ring::integers())};
    for (int deg = 0; deg < 3; ++deg) {
      const auto& [din, dout] = deg == 0   ? std::pair{none_in, a}
                                : deg == 1 ? std::pair{a, b}
                                           : std::pair{b, none_out};
      EXPECT_EQ(cohomology_at(din, dout, Ring::rationals()).dimension, z[deg].dimension);
      for (std::uint32_t p : {2u, 3u, 5u}) {
        const Ring fp = Ring::prime_field(p);
        const auto hp = cohomology_at(din.over(fp), dout.over(fp), fp);
        const std::size_t next = deg < 2 ? p_count(z[deg + 1].torsion, p) : 0;
        EXPECT_EQ(hp.dimension, z[deg].dimension + p_count(z[deg].torsion, p) + next)
            << "trial " << trial << " degree " << deg << " p " << p;
      }
    }
  }
}

TEST(Cohomology, PrimePowerDecomposition) {
  const auto d = prime_power_decomposition({6, 12});
  std::vector<mpz_class> values;
  for (const auto& [q, k] : d) {
    mpz_class v;
    mpz_pow_ui(v.get_mpz_t(), q.get_mpz_t(), k);
    values.push_back(v);
  }
  EXPECT_EQ(values, (std::vector<mpz_class>{2, 3, 4, 3}));
}
