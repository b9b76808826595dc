#include "lieseq/torsion.hpp"

#include <algorithm>
#include <set>

#include "lieseq/error.hpp"
#include "lieseq/exact_linalg.hpp"
#include "parallel.hpp"

namespace lieseq::torsion {

mpz_class PrimePower::value() const {
  mpz_class v;
  mpz_pow_ui(v.get_mpz_t(), prime.get_mpz_t(), exponent);
  return v;
}

std::string PrimePower::to_string() const {
  std::string s = prime.get_str();
  if (exponent != 1) s += "^" + std::to_string(exponent);
  return s;
}

std::size_t IntegralCohomology::p_torsion_count(const mpz_class& p) const {
  return static_cast<std::size_t>(std::count_if(torsion.begin(), torsion.end(), [&](const PrimePower& q) { return q.prime == p; }));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Match: return "match";
    case Verdict::TorsionExplained: return "torsion-explained";
    case Verdict::Violation: return "violation";
  }
  return "?";
}

namespace {

void require_integers(const KoszulComplex& c) {
  if (c.ring().kind() != RingKind::Integers)
    throw DomainError("integral cohomology needs an algebra over Z, got " + c.ring().name());
}

bool split_by_weight(const KoszulComplex& c, const spectral::Options& opt) {
  return opt.use_weights && c.algebra().has_weights();
}

}  // namespace

IntegralCohomology integral_cohomology(const KoszulComplex& c, int s, int t, const spectral::Options& opt) {
  require_integers(c);
  const int n = static_cast<int>(c.n());
  if (s < 0 || t < 0 || t > n) throw DomainError("bidegree (" + std::to_string(s) + "," + std::to_string(t) + ") out of range");
  IntegralCohomology out;
  out.s = s;
  out.t = t;
  const std::string label = "d0 at s=" + std::to_string(s) + " t=" + std::to_string(t);
  std::vector<mpz_class> invariants;
  auto absorb = [&](const SparseMatrix& d_in, const SparseMatrix& d_out) {
    auto h = linalg::cohomology_at(d_in, d_out, c.ring(), label);
    out.free_rank += h.dimension;
    invariants.insert(invariants.end(), h.torsion.begin(), h.torsion.end());
  };
  if (split_by_weight(c, opt)) {
    for (const auto& st : c.strata(s, t)) {
      const auto& w = st.weight;
      const std::size_t here = st.members.size();
      SparseMatrix d_in = t > 0 ? c.d0(s, t - 1, w) : SparseMatrix(here, 0);
      SparseMatrix d_out = t < n ? c.d0(s, t, w) : SparseMatrix(0, here);
      absorb(d_in, d_out);
    }
  } else {
    const std::size_t here = c.block_size(s, t);
    SparseMatrix d_in = t > 0 ? c.d0(s, t - 1) : SparseMatrix(here, 0);
    SparseMatrix d_out = t < n ? c.d0(s, t) : SparseMatrix(0, here);
    absorb(d_in, d_out);
  }
  for (auto& [q, k] : linalg::prime_power_decomposition(invariants)) out.torsion.push_back({q, k});
  std::sort(out.torsion.begin(), out.torsion.end(), [](const PrimePower& a, const PrimePower& b) {
    return a.prime != b.prime ? a.prime < b.prime : a.exponent < b.exponent;
  });
  return out;
}

std::vector<IntegralCohomology> integral_table(const KoszulComplex& c, spectral::TruncationWindow w,
                                               const spectral::Options& opt) {
  require_integers(c);
  const int n = static_cast<int>(c.n());
  std::vector<IntegralCohomology> out(static_cast<std::size_t>(w.max_hodge + 1) * (n + 1));
  detail::parallel_for(out.size(), opt.threads, [&](std::size_t i) {
    out[i] = integral_cohomology(c, static_cast<int>(i / (n + 1)), static_cast<int>(i % (n + 1)), opt);
  });
  return out;
}

TorsionPrimes torsion_primes(const std::vector<IntegralCohomology>& table) {
  TorsionPrimes tp;
  std::map<int, std::set<mpz_class>> by;
  for (const auto& h : table) {
    auto& bucket = by[h.s];
    for (const auto& q : h.torsion) {
      bucket.insert(q.prime);
      auto it = tp.first_hodge.find(q.prime);
      if (it == tp.first_hodge.end() || h.s < it->second) tp.first_hodge[q.prime] = h.s;
    }
  }
  for (auto& [s, set] : by) tp.by_hodge[s] = {set.begin(), set.end()};
  return tp;
}

TorsionPrimes torsion_primes(const KoszulComplex& c, spectral::TruncationWindow w, const spectral::Options& opt) {
  return torsion_primes(integral_table(c, w, opt));
}

std::vector<UcfEntry> ucf_compare(const KoszulComplex& integral, std::uint32_t p, spectral::TruncationWindow w,
                                  const spectral::Options& opt) {
  return ucf_compare(integral, integral_table(integral, w, opt), p, w, opt);
}

std::vector<UcfEntry> ucf_compare(const KoszulComplex& integral, const std::vector<IntegralCohomology>& table,
                                  std::uint32_t p, spectral::TruncationWindow w, const spectral::Options& opt) {
  require_integers(integral);
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  const int n = static_cast<int>(integral.n());
  KoszulComplex cq(integral.algebra().with_ring(Ring::rationals()));
  KoszulComplex cp(integral.algebra().with_ring(Ring::prime_field(p)));
  const auto eq = spectral::compute_E1(cq, w, opt);
  const auto ep = spectral::compute_E1(cp, w, opt);
  std::map<std::pair<int, int>, const IntegralCohomology*> at;
  for (const auto& h : table) at[{h.s, h.t}] = &h;
  const mpz_class pz = p;
  std::vector<UcfEntry> out;
  for (int s = 0; s <= w.max_hodge; ++s)
    for (int t = 0; t <= n; ++t) {
      auto it = at.find({s, t});
      if (it == at.end()) throw DomainError("integral table lacks (" + std::to_string(s) + "," + std::to_string(t) + ")");
      UcfEntry e;
      e.s = s;
      e.t = t;
      e.dim_q = eq.at(s, t);
      e.dim_fp = ep.at(s, t);
      e.free_rank = it->second->free_rank;
      e.torsion_here = it->second->p_torsion_count(pz);
      auto next = at.find({s, t + 1});
      e.torsion_next = next == at.end() ? 0 : next->second->p_torsion_count(pz);
      if (e.dim_q != e.free_rank || e.dim_fp != e.free_rank + e.torsion_here + e.torsion_next)
        e.verdict = Verdict::Violation;
      else if (e.dim_fp != e.dim_q)
        e.verdict = Verdict::TorsionExplained;
      else
        e.verdict = Verdict::Match;
      out.push_back(e);
    }
  return out;
}

}  // namespace lieseq::torsion
