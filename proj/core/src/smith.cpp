#include <algorithm>
#include <utility>

#include "lieseq/error.hpp"
#include "lieseq/exact_linalg.hpp"

namespace lieseq::linalg {

namespace {

DenseIntMatrix dense(const SparseMatrix& m) {
  DenseIntMatrix a(m.rows(), std::vector<mpz_class>(m.cols(), 0));
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& e : m.column(j)) a[e.row][j] = static_cast<long>(e.value);
  return a;
}

// Extended gcd with x·a + y·b = g ≥ 0.
void xgcd(const mpz_class& a, const mpz_class& b, mpz_class& g, mpz_class& x, mpz_class& y) {
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

}  // namespace

SmithForm smith_normal_form(const SparseMatrix& m) {
  DenseIntMatrix a = dense(m);
  const std::size_t rows = m.rows(), cols = m.cols();
  SmithForm out;
  std::size_t k = 0;
  auto find_min = [&](std::size_t& bi, std::size_t& bj) {
    bool found = false;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j)
        if (a[i][j] != 0 && (!found || abs(a[i][j]) < abs(a[bi][bj]))) {
          bi = i, bj = j, found = true;
        }
    return found;
  };
  auto bring = [&](std::size_t i, std::size_t j) {
    std::swap(a[k], a[i]);
    if (j != k)
      for (auto& row : a) std::swap(row[k], row[j]);
  };
  while (k < std::min(rows, cols)) {
    std::size_t bi = 0, bj = 0;
    if (!find_min(bi, bj)) break;
    bring(bi, bj);
    for (;;) {
      bool clean = true;
      mpz_class q;
      for (std::size_t i = k + 1; i < rows; ++i) {
        if (a[i][k] == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a[i][k].get_mpz_t(), a[k][k].get_mpz_t());
        for (std::size_t j = k; j < cols; ++j) a[i][j] -= q * a[k][j];
        if (a[i][k] != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < cols; ++j) {
        if (a[k][j] == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a[k][j].get_mpz_t(), a[k][k].get_mpz_t());
        for (std::size_t i = k; i < rows; ++i) a[i][j] -= q * a[i][k];
        if (a[k][j] != 0) clean = false;
      }
      if (!clean) {
        // Move the smallest remainder in row/column k to the pivot.
        std::size_t bi2 = k, bj2 = k;
        for (std::size_t i = k + 1; i < rows; ++i)
          if (a[i][k] != 0 && abs(a[i][k]) < abs(a[bi2][bj2])) bi2 = i, bj2 = k;
        for (std::size_t j = k + 1; j < cols; ++j)
          if (a[k][j] != 0 && abs(a[k][j]) < abs(a[bi2][bj2])) bi2 = k, bj2 = j;
        if (bi2 != k) std::swap(a[k], a[bi2]);
        if (bj2 != k)
          for (auto& row : a) std::swap(row[k], row[bj2]);
        continue;
      }
      // Pivot must divide the rest of the submatrix.
      std::size_t bad = rows;
      for (std::size_t i = k + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = k + 1; j < cols; ++j)
          if (a[i][j] % a[k][k] != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      for (std::size_t j = k; j < cols; ++j) a[k][j] += a[bad][j];
    }
    out.invariants.push_back(abs(a[k][k]));
    ++k;
  }
  return out;
}

IntegerKernel integer_kernel(const SparseMatrix& m) {
  const std::size_t rows = m.rows(), n = m.cols();
  DenseIntMatrix a = dense(m);
  DenseIntMatrix v(n, std::vector<mpz_class>(n, 0)), w(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = w[i][i] = 1;
  std::size_t r = 0;
  mpz_class g, x, y, ag, bg, t1, t2;
  for (std::size_t i = 0; i < rows && r < n; ++i) {
    for (std::size_t j = r + 1; j < n; ++j) {
      if (a[i][j] == 0) continue;
      xgcd(a[i][r], a[i][j], g, x, y);
      ag = a[i][r] / g;
      bg = a[i][j] / g;
      // [col_r, col_j] ← [col_r, col_j]·[[x, -bg], [y, ag]], determinant 1.
      auto combine_cols = [&](DenseIntMatrix& mat) {
        for (auto& row : mat) {
          t1 = x * row[r] + y * row[j];
          t2 = ag * row[j] - bg * row[r];
          row[r] = t1;
          row[j] = t2;
        }
      };
      combine_cols(a);
      combine_cols(v);
      // Inverse acts on rows r, j of w: [[ag, bg], [-y, x]].
      for (std::size_t c = 0; c < n; ++c) {
        t1 = ag * w[r][c] + bg * w[j][c];
        t2 = x * w[j][c] - y * w[r][c];
        w[r][c] = t1;
        w[j][c] = t2;
      }
    }
    if (a[i][r] != 0) ++r;
  }
  IntegerKernel out;
  out.ambient = n;
  out.basis.assign(n, std::vector<mpz_class>(n - r));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = r; c < n; ++c) out.basis[i][c - r] = v[i][c];
  out.coords.assign(w.begin() + static_cast<std::ptrdiff_t>(r), w.end());
  return out;
}

}  // namespace lieseq::linalg
