#include "rank_engine.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include <gmpxx.h>

namespace lieseq::detail {

namespace {

struct Overflow {};

template <class T>
struct Entry {
  std::uint32_t idx;
  T val;
};
template <class T>
using Row = std::vector<Entry<T>>;

struct ModP {
  using T = std::uint32_t;
  std::uint32_t p;

  T from(std::int64_t v) const { return modp::reduce(v, p); }

  void normalize(Row<T>& v) const {
    T inv = modp::inverse(v[0].val, p);
    if (inv == 1) return;
    for (auto& e : v) e.val = modp::mul(e.val, inv, p);
  }

  // out = v - v.lead * piv; piv has leading coefficient 1.
  void reduce(const Row<T>& v, const Row<T>& piv, Row<T>& out) const {
    out.clear();
    T f = p - v[0].val;
    std::size_t i = 1, j = 1;
    while (i < v.size() || j < piv.size()) {
      if (j == piv.size() || (i < v.size() && v[i].idx < piv[j].idx)) {
        out.push_back(v[i++]);
      } else if (i == v.size() || piv[j].idx < v[i].idx) {
        out.push_back({piv[j].idx, modp::mul(piv[j].val, f, p)});
        ++j;
      } else {
        T s = modp::add(v[i].val, modp::mul(piv[j].val, f, p), p);
        if (s) out.push_back({v[i].idx, s});
        ++i, ++j;
      }
    }
  }
};

inline std::int64_t mul64(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t sub64(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}

struct Int64 {
  using T = std::int64_t;
  T from(std::int64_t v) const { return v; }
  static T gcd(T a, T b) { return std::gcd(a, b); }
  static T mul(T a, T b) { return mul64(a, b); }
  static T sub(T a, T b) { return sub64(a, b); }
  static bool is_unit(T a) { return a == 1 || a == -1; }
  static bool is_zero(T a) { return a == 0; }
  static T div(T a, T b) { return a / b; }
};

struct Mpz {
  using T = mpz_class;
  T from(std::int64_t v) const { return mpz_class(static_cast<long>(v)); }
  static T gcd(const T& a, const T& b) {
    T g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
  }
  static T mul(const T& a, const T& b) { return a * b; }
  static T sub(const T& a, const T& b) { return a - b; }
  static bool is_unit(const T& a) { return a == 1 || a == -1; }
  static bool is_zero(const T& a) { return a == 0; }
  static T div(const T& a, const T& b) {
    T q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }
};

// Fraction-free reduction over Z; rows are kept primitive.
template <class Ops>
struct FractionFree {
  using T = typename Ops::T;
  Ops ops;

  T from(std::int64_t v) const { return ops.from(v); }

  void normalize(Row<T>& v) const { make_primitive(v); }

  void make_primitive(Row<T>& v) const {
    T g = 0;
    for (const auto& e : v) {
      g = Ops::gcd(g, e.val);
      if (Ops::is_unit(g)) return;
    }
    if (Ops::is_zero(g)) return;
    for (auto& e : v) e.val = Ops::div(e.val, g);
  }

  void reduce(const Row<T>& v, const Row<T>& piv, Row<T>& out) const {
    out.clear();
    T a = piv[0].val, b = v[0].val;
    T g = Ops::gcd(a, b);
    T ma = Ops::div(a, g), mb = Ops::div(b, g);
    std::size_t i = 1, j = 1;
    while (i < v.size() || j < piv.size()) {
      if (j == piv.size() || (i < v.size() && v[i].idx < piv[j].idx)) {
        out.push_back({v[i].idx, Ops::mul(v[i].val, ma)});
        ++i;
      } else if (i == v.size() || piv[j].idx < v[i].idx) {
        out.push_back({piv[j].idx, Ops::sub(T(0), Ops::mul(piv[j].val, mb))});
        ++j;
      } else {
        T s = Ops::sub(Ops::mul(v[i].val, ma), Ops::mul(piv[j].val, mb));
        if (!Ops::is_zero(s)) out.push_back({v[i].idx, s});
        ++i, ++j;
      }
    }
    if (!Ops::is_unit(ma)) make_primitive(out);
  }
};

// Each column of m becomes a vector over row coordinates. Coordinates are
// relabelled by increasing occupancy, so sparse rows become early pivots.
template <class Policy>
std::vector<Row<typename Policy::T>> load(const SparseMatrix& m, const Policy& pol, std::size_t& rank) {
  using T = typename Policy::T;
  std::vector<std::uint32_t> count(m.rows(), 0);
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& e : m.column(j)) ++count[e.row];

  // Singleton coordinates: a row meeting a single live column lets that
  // column pivot without touching anything else.
  std::vector<std::vector<std::uint32_t>> cols_of_row(m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& e : m.column(j)) cols_of_row[e.row].push_back(static_cast<std::uint32_t>(j));
  std::vector<char> dead(m.cols(), 0);
  std::vector<std::uint32_t> queue;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (count[i] == 1) queue.push_back(static_cast<std::uint32_t>(i));
  while (!queue.empty()) {
    std::uint32_t r = queue.back();
    queue.pop_back();
    if (count[r] != 1) continue;
    std::uint32_t col = UINT32_MAX;
    for (auto c : cols_of_row[r])
      if (!dead[c]) {
        col = c;
        break;
      }
    if (col == UINT32_MAX) continue;
    dead[col] = 1;
    ++rank;
    for (const auto& e : m.column(col)) {
      if (--count[e.row] == 1) queue.push_back(e.row);
    }
  }

  std::vector<std::uint32_t> order(m.rows());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return count[a] < count[b]; });
  std::vector<std::uint32_t> label(m.rows());
  for (std::uint32_t k = 0; k < order.size(); ++k) label[order[k]] = k;

  std::vector<Row<T>> rows;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (dead[j]) continue;
    Row<T> v;
    for (const auto& e : m.column(j)) {
      T x = pol.from(e.value);
      if (x != T(0) && count[e.row] > 0) v.push_back({label[e.row], x});
    }
    if (v.empty()) continue;
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.idx < b.idx; });
    rows.push_back(std::move(v));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return rows;
}

template <class Policy>
std::size_t echelon_rank(const SparseMatrix& m, const Policy& pol) {
  using T = typename Policy::T;
  std::size_t rank = 0;
  auto rows = load(m, pol, rank);
  std::vector<std::int32_t> pivot_of(m.rows(), -1);
  std::vector<Row<T>> pivots;
  Row<T> tmp;
  for (auto& v : rows) {
    while (!v.empty()) {
      std::int32_t k = pivot_of[v[0].idx];
      if (k < 0) {
        pol.normalize(v);
        pivot_of[v[0].idx] = static_cast<std::int32_t>(pivots.size());
        pivots.push_back(std::move(v));
        break;
      }
      pol.reduce(v, pivots[k], tmp);
      std::swap(v, tmp);
    }
  }
  return rank + pivots.size();
}

}  // namespace

std::size_t rank_mod_p(const SparseMatrix& m, std::uint32_t p) { return echelon_rank(m, ModP{p}); }

std::size_t rank_over_q(const SparseMatrix& m) {
  try {
    return echelon_rank(m, FractionFree<Int64>{});
  } catch (const Overflow&) {
    return echelon_rank(m, FractionFree<Mpz>{});
  }
}

}  // namespace lieseq::detail
