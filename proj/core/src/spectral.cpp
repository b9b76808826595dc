#include "lieseq/spectral.hpp"

#include <map>
#include <set>
#include <tuple>

#include "lieseq/error.hpp"
#include "lieseq/exact_linalg.hpp"
#include "parallel.hpp"
#include "rank_engine.hpp"

namespace lieseq::spectral {

std::size_t PageReport::at(int s, int t) const {
  if (s < 0 || t < 0 || s > max_hodge || t > n) return 0;
  return dims[s][t];
}

std::size_t PageReport::rank_out(int s, int t) const {
  if (ranks_out.empty() || s < 0 || t < 0 || s > max_hodge || t > n) return 0;
  return ranks_out[s][t];
}

int stable_page(std::size_t n) { return static_cast<int>((n + 1) / 2) + 1; }

namespace {

constexpr std::uint32_t kCertPrime = 2147483647u;

using Grid = std::vector<std::vector<std::size_t>>;

Grid zero_grid(int N, int n) { return Grid(N + 1, std::vector<std::size_t>(n + 1, 0)); }

// Blocks of one weight stratum (or whole blocks when weights are off).
class StratumView {
 public:
  StratumView(const KoszulComplex& c, WeightVector w, bool weighted) : c_(c), w_(std::move(w)), weighted_(weighted) {}

  std::size_t size(int s, int t) const {
    if (s < 0 || t < 0 || t > static_cast<int>(c_.n())) return 0;
    return weighted_ ? c_.stratum_size(s, t, w_) : c_.block_size(s, t);
  }
  // 'd' = d0, 'e' = d1
  const SparseMatrix& d0(int s, int t) { return get('d', s, t); }
  const SparseMatrix& d1(int s, int t) { return get('e', s, t); }
  void drop_cache() { cache_.clear(); }

 private:
  const SparseMatrix& get(char kind, int s, int t) {
    auto key = std::tuple{kind, s, t};
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    SparseMatrix m;
    if (kind == 'd')
      m = weighted_ ? c_.d0(s, t, w_) : c_.d0(s, t);
    else
      m = weighted_ ? c_.d1(s, t, w_) : c_.d1(s, t);
    return cache_.emplace(key, std::move(m)).first->second;
  }

  const KoszulComplex& c_;
  WeightVector w_;
  bool weighted_;
  std::map<std::tuple<char, int, int>, SparseMatrix> cache_;
};

bool weighted(const KoszulComplex& c, const Options& opt) { return opt.use_weights && c.algebra().has_weights(); }

std::vector<WeightVector> weights_in_window(const KoszulComplex& c, int N, const Options& opt) {
  if (!weighted(c, opt)) return {WeightVector{}};
  std::set<WeightVector> all;
  for (int s = 0; s <= N; ++s)
    for (int t = 0; t <= static_cast<int>(c.n()); ++t)
      for (const auto& st : c.strata(s, t)) all.insert(st.weight);
  return {all.begin(), all.end()};
}

void require_field(const KoszulComplex& c) {
  if (!c.ring().is_field())
    throw DomainError("spectral pages need a field; over Z use the torsion module (ring " + c.ring().name() + ")");
}

// Ranks of d_0 : (s,t) → (s,t+1) for t = 0..n-1 inside one stratum.
std::vector<std::size_t> d0_ranks(StratumView& v, const Ring& ring, int s, int n) {
  std::vector<std::size_t> r(n + 1, 0);
  if (ring.is_prime_field()) {
    for (int t = 0; t < n; ++t) r[t] = detail::rank_mod_p(v.d0(s, t), ring.characteristic());
    return r;
  }
  // Over Q: ranks mod a large prime are lower bounds; d∘d = 0 bounds
  // r_t + r_{t-1} by dim C^t, which pins both ranks wherever H_p^t = 0.
  std::vector<std::size_t> h(n + 2, 0);
  for (int t = 0; t < n; ++t) r[t] = detail::rank_mod_p(v.d0(s, t).over(Ring::prime_field(kCertPrime)), kCertPrime);
  for (int t = 0; t <= n; ++t) h[t] = v.size(s, t) - r[t] - (t > 0 ? r[t - 1] : 0);
  for (int t = 0; t < n; ++t)
    if (h[t] != 0 && h[t + 1] != 0) r[t] = detail::rank_over_q(v.d0(s, t));
  return r;
}

Grid e1_grid(StratumView& v, const Ring& ring, int N, int n) {
  Grid g = zero_grid(N, n);
  for (int s = 0; s <= N; ++s) {
    auto r = d0_ranks(v, ring, s, n);
    for (int t = 0; t <= n; ++t) g[s][t] = v.size(s, t) - r[t] - (t > 0 ? r[t - 1] : 0);
    v.drop_cache();
  }
  return g;
}

struct BlockRef {
  std::size_t brow, bcol;
  const SparseMatrix* m;
};

SparseMatrix assemble(const std::vector<std::size_t>& row_sizes, const std::vector<std::size_t>& col_sizes,
                      const std::vector<BlockRef>& blocks) {
  std::vector<std::size_t> roff(row_sizes.size() + 1, 0), coff(col_sizes.size() + 1, 0);
  for (std::size_t i = 0; i < row_sizes.size(); ++i) roff[i + 1] = roff[i] + row_sizes[i];
  for (std::size_t j = 0; j < col_sizes.size(); ++j) coff[j + 1] = coff[j] + col_sizes[j];
  BlockAssembler a(roff.back(), coff.back());
  for (const auto& b : blocks)
    if (b.m->rows() && b.m->cols()) a.place(roff[b.brow], coff[b.bcol], *b.m);
  return std::move(a).build();
}

// dim of the leading-column image of Z_r at (p,t): cochains x_p + ... + x_{p+r-1}
// with d_0 x_p = 0 and d_1 x_{k-1} + d_0 x_k = 0 below p + r.
std::size_t z_dim(StratumView& v, const Ring& ring, int N, int p, int t, int r) {
  const std::size_t lead = v.size(p, t);
  if (lead == 0) return 0;
  // Unknown x_{p+k} at (p+k, t-2k); its equation row sits one step up in t.
  // A row survives when t-2k = -1 even though its unknown does not.
  std::vector<std::size_t> cs, rs;
  for (int k = 0; k < r; ++k) {
    const int s = p + k, tt = t - 2 * k;
    if (s > N || tt + 1 < 0) break;
    cs.push_back(tt >= 0 ? v.size(s, tt) : 0);
    rs.push_back(v.size(s, tt + 1));
  }
  const std::size_t kc = cs.size();
  std::vector<BlockRef> full, tail;
  for (std::size_t k = 0; k < kc; ++k) {
    const int s = p + static_cast<int>(k), tt = t - 2 * static_cast<int>(k);
    if (cs[k]) {
      const SparseMatrix& diag = v.d0(s, tt);
      full.push_back({k, k, &diag});
      if (k > 0) tail.push_back({k, k - 1, &diag});
    }
    if (k > 0 && cs[k - 1]) {
      const SparseMatrix& sub = v.d1(s - 1, tt + 2);
      full.push_back({k, k - 1, &sub});
      if (k > 1) tail.push_back({k, k - 2, &sub});
    }
  }
  const std::size_t ra = linalg::rank(assemble(rs, cs, full), ring);
  std::vector<std::size_t> cs_tail(cs.begin() + 1, cs.end());
  const std::size_t rt = kc > 1 ? linalg::rank(assemble(rs, cs_tail, tail), ring) : 0;
  return lead - ra + rt;
}

// dim of the leading-column image of B_{r-1} at (p,t): π(T y) for y in
// F_{p-r+1} of total degree one less with T y ∈ F_p.
std::size_t b_dim(StratumView& v, const Ring& ring, int p, int t, int r) {
  if (v.size(p, t) == 0) return 0;
  // Unknown j lives at (p-j, t+2j-1); constraint j >= 1 at (p-j, t+2j).
  std::vector<std::size_t> cs;
  std::vector<int> us, ut;
  for (int j = 0; j < r; ++j) {
    const int s = p - j, tt = t + 2 * j - 1;
    us.push_back(s);
    ut.push_back(tt);
    cs.push_back(s >= 0 ? v.size(s, tt) : 0);
  }
  // Row 0 is L (target (p,t)); rows 1..r-1 are the constraints G.
  std::vector<std::size_t> rs;
  for (int j = 0; j < r; ++j) rs.push_back(p - j >= 0 ? v.size(p - j, t + 2 * j) : 0);
  std::vector<BlockRef> all, g_only;
  for (int j = 0; j < r; ++j) {
    if (cs[j] == 0) continue;
    // d_0 y_j lands in row j; d_1 y_j lands in row j-1.
    if (rs[j]) {
      const SparseMatrix& d0 = v.d0(us[j], ut[j]);
      all.push_back({static_cast<std::size_t>(j), static_cast<std::size_t>(j), &d0});
      if (j > 0) g_only.push_back({static_cast<std::size_t>(j - 1), static_cast<std::size_t>(j), &d0});
    }
    if (j > 0 && rs[j - 1]) {
      const SparseMatrix& d1 = v.d1(us[j], ut[j]);
      all.push_back({static_cast<std::size_t>(j - 1), static_cast<std::size_t>(j), &d1});
      if (j > 1) g_only.push_back({static_cast<std::size_t>(j - 2), static_cast<std::size_t>(j), &d1});
    }
  }
  const std::size_t rank_all = linalg::rank(assemble(rs, cs, all), ring);
  std::vector<std::size_t> rs_g(rs.begin() + 1, rs.end());
  const std::size_t rank_g = r > 1 ? linalg::rank(assemble(rs_g, cs, g_only), ring) : 0;
  return rank_all - rank_g;
}

std::vector<PageReport> pages_for_stratum(StratumView& v, const Ring& ring, int N, int n, int last) {
  std::vector<PageReport> out;
  // z[r] for r = 1..last+1
  std::vector<Grid> z(last + 2, zero_grid(N, n)), b(last + 1, zero_grid(N, n));
  {
    for (int s = 0; s <= N; ++s) {
      auto rk = d0_ranks(v, ring, s, n);
      for (int t = 0; t <= n; ++t) {
        z[1][s][t] = v.size(s, t) - rk[t];
        b[1][s][t] = t > 0 ? rk[t - 1] : 0;
      }
    }
  }
  for (int r = 2; r <= last + 1; ++r)
    for (int s = 0; s <= N; ++s)
      for (int t = 0; t <= n; ++t) {
        z[r][s][t] = z_dim(v, ring, N, s, t, r);
        if (r <= last) b[r][s][t] = b_dim(v, ring, s, t, r);
      }
  for (int r = 1; r <= last; ++r) {
    PageReport page;
    page.r = r;
    page.max_hodge = N;
    page.n = n;
    page.dims = zero_grid(N, n);
    page.ranks_out = zero_grid(N, n);
    for (int s = 0; s <= N; ++s)
      for (int t = 0; t <= n; ++t) {
        page.dims[s][t] = z[r][s][t] - b[r][s][t];
        page.ranks_out[s][t] = z[r][s][t] - z[r + 1][s][t];
      }
    out.push_back(std::move(page));
  }
  return out;
}

void accumulate(PageReport& into, const PageReport& add) {
  for (int s = 0; s <= into.max_hodge; ++s)
    for (int t = 0; t <= into.n; ++t) {
      into.dims[s][t] += add.dims[s][t];
      if (!into.ranks_out.empty()) into.ranks_out[s][t] += add.ranks_out[s][t];
    }
}

PageReport empty_page(int r, int N, int n, bool with_ranks) {
  PageReport p;
  p.r = r;
  p.max_hodge = N;
  p.n = n;
  p.dims = zero_grid(N, n);
  if (with_ranks) p.ranks_out = zero_grid(N, n);
  return p;
}

void check_window(TruncationWindow w) {
  if (w.max_hodge < 0 || w.max_hodge > 250) throw DomainError("max Hodge degree must lie in 0..250");
}

}  // namespace

PageReport compute_E1(const KoszulComplex& c, TruncationWindow w, const Options& opt) {
  require_field(c);
  check_window(w);
  const int N = w.max_hodge, n = static_cast<int>(c.n());
  auto weights = weights_in_window(c, N, opt);
  const bool wt = weighted(c, opt);
  // One task per (weight, s).
  std::vector<std::vector<std::size_t>> slot(weights.size() * (N + 1));
  detail::parallel_for(slot.size(), opt.threads, [&](std::size_t i) {
    StratumView v(c, weights[i / (N + 1)], wt);
    const int s = static_cast<int>(i % (N + 1));
    auto r = d0_ranks(v, c.ring(), s, n);
    slot[i].resize(n + 1);
    for (int t = 0; t <= n; ++t) slot[i][t] = v.size(s, t) - r[t] - (t > 0 ? r[t - 1] : 0);
  });
  PageReport page = empty_page(1, N, n, false);
  for (std::size_t i = 0; i < slot.size(); ++i)
    for (int t = 0; t <= n; ++t) page.dims[i % (N + 1)][t] += slot[i][t];
  return page;
}

std::vector<PageReport> compute_pages(const KoszulComplex& c, TruncationWindow w, int last, const Options& opt) {
  require_field(c);
  check_window(w);
  const int N = w.max_hodge, n = static_cast<int>(c.n());
  if (last <= 0) last = stable_page(c.n());
  auto weights = weights_in_window(c, N, opt);
  const bool wt = weighted(c, opt);
  std::vector<std::vector<PageReport>> per(weights.size());
  detail::parallel_for(weights.size(), opt.threads, [&](std::size_t i) {
    StratumView v(c, weights[i], wt);
    per[i] = pages_for_stratum(v, c.ring(), N, n, last);
  });
  std::vector<PageReport> out;
  for (int r = 1; r <= last; ++r) {
    PageReport page = empty_page(r, N, n, true);
    for (const auto& pw : per) accumulate(page, pw[r - 1]);
    out.push_back(std::move(page));
  }
  return out;
}

StratifiedReport stratify(const KoszulComplex& c, TruncationWindow w, int pages, const Options& opt) {
  require_field(c);
  check_window(w);
  if (!c.algebra().has_weights()) throw DomainError(c.algebra().name() + " has no weights to stratify by");
  const int N = w.max_hodge, n = static_cast<int>(c.n());
  Options o = opt;
  o.use_weights = true;
  auto weights = weights_in_window(c, N, o);
  StratifiedReport rep;
  rep.strata.resize(weights.size());
  detail::parallel_for(weights.size(), o.threads, [&](std::size_t i) {
    StratumView v(c, weights[i], true);
    rep.strata[i].weight = weights[i];
    if (pages <= 1) {
      PageReport p = empty_page(1, N, n, false);
      p.dims = e1_grid(v, c.ring(), N, n);
      rep.strata[i].pages.push_back(std::move(p));
    } else {
      rep.strata[i].pages = pages_for_stratum(v, c.ring(), N, n, pages);
    }
  });
  return rep;
}

EulerPoincare euler_poincare_check(const KoszulComplex& c, int s, const Options& opt) {
  require_field(c);
  const int n = static_cast<int>(c.n());
  EulerPoincare ep;
  ep.s = s;
  auto weights = weighted(c, opt) ? std::vector<WeightVector>{} : std::vector<WeightVector>{WeightVector{}};
  if (weighted(c, opt)) {
    std::set<WeightVector> all;
    for (int t = 0; t <= n; ++t)
      for (const auto& st : c.strata(s, t)) all.insert(st.weight);
    weights.assign(all.begin(), all.end());
  }
  for (int t = 0; t <= n; ++t) ep.e0_sum += (t % 2 ? -1 : 1) * static_cast<std::int64_t>(c.block_size(s, t));
  for (const auto& w : weights) {
    StratumView v(c, w, weighted(c, opt));
    auto r = d0_ranks(v, c.ring(), s, n);
    for (int t = 0; t <= n; ++t) {
      const auto dim = static_cast<std::int64_t>(v.size(s, t) - r[t] - (t > 0 ? r[t - 1] : 0));
      ep.e1_sum += (t % 2 ? -1 : 1) * dim;
    }
  }
  return ep;
}

std::size_t induced_d1_rank(const KoszulComplex& c, int s, int t, const Options& opt) {
  require_field(c);
  const int n = static_cast<int>(c.n());
  if (t < 1 || t > n || s < 0) return 0;
  std::vector<WeightVector> weights{WeightVector{}};
  const bool wt = weighted(c, opt);
  if (wt) {
    weights.clear();
    for (const auto& st : c.strata(s, t)) weights.push_back(st.weight);
  }
  std::size_t total = 0;
  for (const auto& w : weights) {
    StratumView v(c, w, wt);
    // rank [[d0(s,t), 0], [d1(s,t), d0(s+1,t-2)]] - rank d0(s,t) - rank d0(s+1,t-2)
    const SparseMatrix& a = v.d0(s, t);
    const SparseMatrix& l = v.d1(s, t);
    SparseMatrix empty_in(v.size(s + 1, t - 1), 0);
    const SparseMatrix& in = t >= 2 ? v.d0(s + 1, t - 2) : empty_in;
    std::vector<std::size_t> rs{v.size(s, t + 1), v.size(s + 1, t - 1)};
    std::vector<std::size_t> cs{v.size(s, t), t >= 2 ? v.size(s + 1, t - 2) : 0};
    const std::size_t big = linalg::rank(assemble(rs, cs, {{0, 0, &a}, {1, 0, &l}, {1, 1, &in}}), c.ring());
    total += big - linalg::rank(a, c.ring()) - (t >= 2 ? linalg::rank(in, c.ring()) : 0);
  }
  return total;
}

std::optional<Cochain> zigzag(const KoszulComplex& c, const Cochain& omega, int r) {
  require_field(c);
  if (r < 1) throw DomainError("zig-zag page must be at least 1");
  auto deg = omega.bidegree();
  if (!deg) return Cochain(c.ring());
  if (!apply_d0(c, omega).is_zero()) throw DomainError("zig-zag input is not a d0-cocycle");
  auto [s, t] = *deg;
  Cochain x = omega;
  for (int k = 1; k < r; ++k) {
    const int sk = s + k, tk = t - 2 * k;
    Cochain rhs = apply_d1(c, x).scaled(-1);
    if (tk < 0) {
      if (!rhs.is_zero()) return std::nullopt;
      return Cochain(c.ring());
    }
    if (rhs.is_zero()) {
      x = Cochain(c.ring());
      continue;
    }
    auto sol = linalg::solve(c.d0(sk, tk), to_vector(c, rhs, sk, tk + 1), c.ring());
    if (!sol) return std::nullopt;
    x = from_vector(c, *sol, sk, tk);
  }
  return apply_d1(c, x);
}

}  // namespace lieseq::spectral
