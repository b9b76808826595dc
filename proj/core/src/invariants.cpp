#include "lieseq/invariants.hpp"

#include <string>

#include "lieseq/builtins.hpp"
#include "lieseq/error.hpp"

namespace lieseq {

namespace {

using Poly = std::map<std::vector<std::uint32_t>, std::int64_t>;

Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<std::uint32_t> e(ea);
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
      out[e] += ca * cb;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

void add_into(Poly& a, const Poly& b, std::int64_t sign) {
  for (const auto& [e, c] : b) a[e] += sign * c;
  std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
}

// Determinant of a square matrix of polynomials by Laplace expansion along
// rows, memoised over the set of columns already used.
Poly determinant(const std::vector<std::vector<Poly>>& m, std::size_t nvars) {
  const std::size_t k = m.size();
  std::vector<Poly> memo(std::size_t{1} << k);
  std::vector<char> done(std::size_t{1} << k, 0);
  // det of rows [popcount(used)..k) with columns outside `used`.
  auto rec = [&](auto&& self, std::uint32_t used) -> const Poly& {
    if (done[used]) return memo[used];
    done[used] = 1;
    const std::size_t row = static_cast<std::size_t>(__builtin_popcount(used));
    Poly result;
    if (row == k) {
      result[std::vector<std::uint32_t>(nvars, 0)] = 1;
    } else {
      std::int64_t sign = 1;
      for (std::size_t c = 0; c < k; ++c) {
        if (used & (1u << c)) continue;
        if (!m[row][c].empty()) add_into(result, mul(m[row][c], self(self, used | (1u << c))), sign);
        sign = -sign;
      }
    }
    memo[used] = std::move(result);
    return memo[used];
  };
  return rec(rec, 0);
}

}  // namespace

InvariantPolynomial sigma_invariant(std::size_t n, std::size_t i) {
  if (i < 2 || i > n) throw DomainError("sigma_invariant needs 2 <= i <= n");
  // Generic element of sl(n) in the builtin basis, rebuilt entrywise.
  const std::size_t dim = n * n - 1;
  std::vector<std::vector<Poly>> x(n, std::vector<Poly>(n));
  auto var = [&](std::size_t k) {
    std::vector<std::uint32_t> e(dim, 0);
    e[k] = 1;
    return e;
  };
  std::size_t k = 0;
  for (; k + 1 < n; ++k) {
    x[k][k][var(k)] += 1;
    x[k + 1][k + 1][var(k)] -= 1;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) x[a][b][var(k++)] = 1;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < a; ++b) x[a][b][var(k++)] = 1;

  InvariantPolynomial out;
  out.nvars = dim;
  out.degree = i;
  for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
    if (static_cast<std::size_t>(__builtin_popcount(subset)) != i) continue;
    std::vector<std::size_t> idx;
    for (std::size_t a = 0; a < n; ++a)
      if (subset & (1u << a)) idx.push_back(a);
    std::vector<std::vector<Poly>> minor(i, std::vector<Poly>(i));
    for (std::size_t r = 0; r < i; ++r)
      for (std::size_t c = 0; c < i; ++c) minor[r][c] = x[idx[r]][idx[c]];
    add_into(out.terms, determinant(minor, dim), 1);
  }
  return out;
}

InvariantPolynomial killing_quadratic(const LieAlgebra& g) {
  auto k = killing_form(g);
  InvariantPolynomial out;
  out.nvars = g.dim();
  out.degree = 2;
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < g.dim(); ++j) {
      if (k[i][j] == 0) continue;
      std::vector<std::uint32_t> e(g.dim(), 0);
      ++e[i];
      ++e[j];
      out.terms[e] += k[i][j];
    }
  std::erase_if(out.terms, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace lieseq
