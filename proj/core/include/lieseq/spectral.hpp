#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lieseq/cochain.hpp"
#include "lieseq/koszul.hpp"

namespace lieseq::spectral {

struct Options {
  std::size_t threads = 1;
  // Split every computation by weight when the algebra has weights.
  bool use_weights = true;
};

struct TruncationWindow {
  int max_hodge = 0;
};

// dim E_r^{s,t} for 0 <= s <= N, 0 <= t <= n. Entries are exact for the
// truncated complex; they agree with the untruncated spectral sequence on
// the valid region s <= N - r + 1.
struct PageReport {
  int r = 1;
  int max_hodge = 0;
  int n = 0;
  std::vector<std::vector<std::size_t>> dims;       // [s][t]
  std::vector<std::vector<std::size_t>> ranks_out;  // rank of d_r leaving (s,t); empty for the last page computed

  bool valid(int s, int t) const { return s >= 0 && s <= max_hodge - r + 1 && t >= 0 && t <= n; }
  std::size_t at(int s, int t) const;
  std::size_t rank_out(int s, int t) const;
};

// Requires a field.
PageReport compute_E1(const KoszulComplex& c, TruncationWindow w, const Options& opt = {});

// Pages E_1..E_{last}. With last = 0, runs until d_r = 0 for degree reasons
// (2r - 1 > n), which makes the final page E_∞ on its valid region.
std::vector<PageReport> compute_pages(const KoszulComplex& c, TruncationWindow w, int last = 0,
                                      const Options& opt = {});

int stable_page(std::size_t n);

struct StratumReport {
  WeightVector weight;
  std::vector<PageReport> pages;
};

struct StratifiedReport {
  std::vector<StratumReport> strata;  // sorted by weight
};

// Per-weight pages; `pages` = 1 gives only E_1.
StratifiedReport stratify(const KoszulComplex& c, TruncationWindow w, int pages = 1, const Options& opt = {});

struct EulerPoincare {
  int s = 0;
  std::int64_t e0_sum = 0;  // Σ (-1)^t dim E_0^{s,t}
  std::int64_t e1_sum = 0;  // Σ (-1)^t dim E_1^{s,t}
  bool ok() const { return e0_sum == e1_sum; }
};

EulerPoincare euler_poincare_check(const KoszulComplex& c, int s, const Options& opt = {});

// Rank of the map E_1^{s,t} → E_1^{s+1,t-1} induced by d_1.
std::size_t induced_d1_rank(const KoszulComplex& c, int s, int t, const Options& opt = {});

// Zig-zag for a d_0-cocycle ω at (s,t): finds ω = x_0, x_1, ..., x_{r-1} with
// d_0 x_k = -d_1 x_{k-1} and returns d_1 x_{r-1}, a representative of
// d_r[ω] at (s+r, t-2r+1). nullopt if some step has no solution (ω does not
// survive to E_r). Throws DomainError if ω is not a d_0-cocycle.
std::optional<Cochain> zigzag(const KoszulComplex& c, const Cochain& omega, int r);

}  // namespace lieseq::spectral
