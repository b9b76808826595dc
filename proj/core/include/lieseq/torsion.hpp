#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "lieseq/koszul.hpp"
#include "lieseq/spectral.hpp"

namespace lieseq::torsion {

struct PrimePower {
  mpz_class prime;
  unsigned exponent = 1;

  mpz_class value() const;
  std::string to_string() const;  // "p^k", or "p" when k = 1
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// H^t(g, S^s(ad*)) over Z: Z^free_rank ⊕ ⊕ Z/q for q in torsion (sorted).
struct IntegralCohomology {
  int s = 0;
  int t = 0;
  std::size_t free_rank = 0;
  std::vector<PrimePower> torsion;

  std::size_t p_torsion_count(const mpz_class& p) const;
};

// The algebra of `c` must be over Z.
IntegralCohomology integral_cohomology(const KoszulComplex& c, int s, int t, const spectral::Options& opt = {});

// All (s,t) with s <= N, ordered by s then t.
std::vector<IntegralCohomology> integral_table(const KoszulComplex& c, spectral::TruncationWindow w,
                                               const spectral::Options& opt = {});

struct TorsionPrimes {
  std::map<int, std::vector<mpz_class>> by_hodge;  // s → primes, sorted
  std::map<mpz_class, int> first_hodge;            // prime → smallest s where it occurs
};

TorsionPrimes torsion_primes(const std::vector<IntegralCohomology>& table);
TorsionPrimes torsion_primes(const KoszulComplex& c, spectral::TruncationWindow w, const spectral::Options& opt = {});

enum class Verdict { Match, TorsionExplained, Violation };
std::string to_string(Verdict v);

struct UcfEntry {
  int s = 0;
  int t = 0;
  std::size_t dim_q = 0;
  std::size_t dim_fp = 0;
  std::size_t free_rank = 0;
  std::size_t torsion_here = 0;  // p-primary cyclic summands of H^t
  std::size_t torsion_next = 0;  // p-primary cyclic summands of H^{t+1}
  Verdict verdict = Verdict::Match;
};

// Compares dim over F_p with free rank plus p-torsion of H^t and H^{t+1}
// (universal coefficients for cochain complexes), and dim over Q with the
// free rank.
std::vector<UcfEntry> ucf_compare(const KoszulComplex& integral, std::uint32_t p, spectral::TruncationWindow w,
                                  const spectral::Options& opt = {});
std::vector<UcfEntry> ucf_compare(const KoszulComplex& integral, const std::vector<IntegralCohomology>& table,
                                  std::uint32_t p, spectral::TruncationWindow w, const spectral::Options& opt = {});

}  // namespace lieseq::torsion
