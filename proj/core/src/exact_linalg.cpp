#include "lieseq/exact_linalg.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "lieseq/error.hpp"
#include "rank_engine.hpp"

namespace lieseq::linalg {

std::size_t rank(const SparseMatrix& m, const Ring& ring) {
  if (ring.is_prime_field()) return detail::rank_mod_p(m.over(ring), ring.characteristic());
  return detail::rank_over_q(m);
}

namespace {

using Vec = std::map<std::uint32_t, mpq_class>;

// Column-by-column echelon over a field that remembers, for every stored
// vector, which combination of inserted vectors produced it.
class TrackedEchelon {
 public:
  explicit TrackedEchelon(const Ring& ring) : ring_(ring) {}

  // Reduces (v, comb) against the stored pivots. Returns true and stores the
  // result if it is nonzero; otherwise leaves the dependency in comb.
  bool insert(Vec v, Vec& comb) {
    while (!v.empty()) {
      auto lead = v.begin();
      auto it = pivots_.find(lead->first);
      if (it == pivots_.end()) {
        mpq_class inv = ring_.normalize(1 / lead->second);
        scale(v, inv);
        scale(comb, inv);
        std::uint32_t key = lead->first;
        pivots_.emplace(key, Pivot{std::move(v), comb});
        return true;
      }
      mpq_class f = lead->second;
      axpy(v, it->second.v, -f);
      axpy(comb, it->second.comb, -f);
    }
    return false;
  }

 private:
  struct Pivot {
    Vec v, comb;
  };
  void scale(Vec& v, const mpq_class& f) {
    for (auto& [k, x] : v) x = ring_.normalize(x * f);
  }
  void axpy(Vec& y, const Vec& x, const mpq_class& f) {
    for (const auto& [k, val] : x) {
      auto [it, fresh] = y.try_emplace(k, 0);
      it->second = ring_.normalize(it->second + f * val);
      if (it->second == 0) y.erase(it);
    }
  }

  Ring ring_;
  std::map<std::uint32_t, Pivot> pivots_;
};

Vec column_vec(const SparseMatrix& m, std::size_t j, const Ring& ring) {
  Vec v;
  for (const auto& e : m.column(j)) {
    mpq_class x = ring.normalize(mpq_class(mpz_class(static_cast<long>(e.value))));
    if (x != 0) v.emplace(e.row, x);
  }
  return v;
}

SparseVector to_sparse(const Vec& v) {
  SparseVector out;
  for (const auto& [k, x] : v) out.push_back({k, x});
  return out;
}

void require_field(const Ring& ring, const char* what) {
  if (!ring.is_field()) throw DomainError(std::string(what) + " requires a field; use integer_kernel or cohomology_at over Z");
}

}  // namespace

RankKernel rank_and_kernel(const SparseMatrix& m, const Ring& ring) {
  require_field(ring, "rank_and_kernel");
  TrackedEchelon ech(ring);
  RankKernel out;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Vec comb{{static_cast<std::uint32_t>(j), mpq_class(1)}};
    if (ech.insert(column_vec(m, j, ring), comb)) {
      ++out.rank;
      continue;
    }
    if (ring.kind() == RingKind::Rationals) {
      mpz_class den = 1, g = 0;
      for (const auto& [k, x] : comb) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
      for (auto& [k, x] : comb) {
        x *= den;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
      }
      for (auto& [k, x] : comb) x /= g;
    }
    out.kernel.push_back(to_sparse(comb));
  }
  return out;
}

std::optional<SparseVector> solve(const SparseMatrix& m, const SparseVector& rhs, const Ring& ring) {
  require_field(ring, "solve");
  TrackedEchelon ech(ring);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Vec comb{{static_cast<std::uint32_t>(j), mpq_class(1)}};
    ech.insert(column_vec(m, j, ring), comb);
  }
  const auto marker = static_cast<std::uint32_t>(m.cols());
  Vec v;
  for (const auto& e : rhs) {
    if (e.index >= m.rows()) throw DomainError("right-hand side longer than matrix");
    mpq_class x = ring.normalize(e.value);
    if (x != 0) v[e.index] = x;
  }
  Vec comb{{marker, mpq_class(1)}};
  if (ech.insert(std::move(v), comb)) return std::nullopt;
  // lambda·rhs + Σ c_j col_j = 0
  mpq_class lambda = comb.at(marker);
  SparseVector x;
  for (const auto& [k, c] : comb) {
    if (k == marker) continue;
    mpq_class val = ring.normalize(-c / lambda);
    if (val != 0) x.push_back({k, val});
  }
  return x;
}

std::vector<std::size_t> independent_columns(const SparseMatrix& m, const Ring& ring) {
  Ring field = ring.is_field() ? ring : Ring::rationals();
  TrackedEchelon ech(field);
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Vec comb;
    if (ech.insert(column_vec(m, j, field), comb)) out.push_back(j);
  }
  return out;
}

CohomologyGroup cohomology_at(const SparseMatrix& d_in, const SparseMatrix& d_out, const Ring& ring,
                              std::string_view label) {
  std::string where = label.empty() ? std::string("cohomology_at") : std::string(label);
  if (d_in.rows() != d_out.cols())
    throw DomainError(where + ": d_in has " + std::to_string(d_in.rows()) + " rows but d_out has " +
                      std::to_string(d_out.cols()) + " columns");
  if (!product_is_zero(d_out, d_in, ring)) throw StructuralError(where + ": d_out·d_in ≠ 0");
  CohomologyGroup h;
  h.ring = ring;
  if (ring.is_field()) {
    h.dimension = d_out.cols() - rank(d_out, ring) - rank(d_in, ring);
    return h;
  }
  IntegerKernel ker = integer_kernel(d_out);
  const std::size_t k = ker.basis.empty() ? 0 : ker.basis[0].size();
  // Coordinates of the image of d_in in the kernel basis.
  std::vector<Triplet> trip;
  std::vector<std::vector<mpz_class>> big(k, std::vector<mpz_class>(d_in.cols()));
  bool fits = true;
  for (std::size_t j = 0; j < d_in.cols(); ++j)
    for (std::size_t a = 0; a < k; ++a) {
      mpz_class s = 0;
      for (const auto& e : d_in.column(j)) s += ker.coords[a][e.row] * static_cast<long>(e.value);
      big[a][j] = s;
      if (!s.fits_slong_p()) fits = false;
      else if (s != 0) trip.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(j), s.get_si()});
    }
  if (!fits) throw DomainError(where + ": coordinates exceed 64 bits");
  SmithForm snf = smith_normal_form(SparseMatrix::from_triplets(k, d_in.cols(), std::move(trip)));
  h.dimension = k - snf.rank();
  for (const auto& d : snf.invariants)
    if (d > 1) h.torsion.push_back(d);
  return h;
}

std::vector<std::pair<mpz_class, unsigned>> prime_power_decomposition(const std::vector<mpz_class>& invariants) {
  std::vector<std::pair<mpz_class, unsigned>> out;
  for (mpz_class d : invariants) {
    if (d < 0) d = -d;
    for (mpz_class q = 2; q * q <= d; ++q) {
      unsigned k = 0;
      while (d % q == 0) {
        d /= q;
        ++k;
      }
      if (k) out.emplace_back(q, k);
    }
    if (d > 1) out.emplace_back(d, 1);
  }
  return out;
}

}  // namespace lieseq::linalg
