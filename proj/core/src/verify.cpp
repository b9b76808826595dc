#include "lieseq/verify.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "lieseq/builtins.hpp"
#include "lieseq/error.hpp"
#include "lieseq/koszul.hpp"
#include "lieseq/ring.hpp"
#include "lieseq/sl2_derham.hpp"
#include "lieseq/spectral.hpp"
#include "lieseq/torsion.hpp"

namespace lieseq::verify {

namespace {

using Grid = std::vector<std::vector<std::size_t>>;  // [s][t]

// First degree of 3-torsion in H*(sl2(Z), S^s), from the SNF oracle in
// tests/oracles.
constexpr int kSl2FirstThreeTorsion = 2;

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

KoszulComplex complex_of(std::string_view name, const Ring& ring) {
  return KoszulComplex(builtin::by_name(name).with_ring(ring));
}

spectral::Options options(std::size_t threads, bool weights = true) {
  spectral::Options o;
  o.threads = threads;
  o.use_weights = weights;
  return o;
}

// Bigraded dims, s <= max_hodge and t <= n, of the tensor product of exterior
// algebras on `odd` and polynomial algebras on `even`; generators are (s, t).
Grid free_algebra_dims(int max_hodge, int n, const std::vector<std::pair<int, int>>& odd,
                       const std::vector<std::pair<int, int>>& even) {
  Grid g(static_cast<std::size_t>(max_hodge) + 1, std::vector<std::size_t>(static_cast<std::size_t>(n) + 1, 0));
  g[0][0] = 1;
  for (auto [ds, dt] : odd)
    for (int s = max_hodge; s >= ds; --s)
      for (int t = n; t >= dt; --t) g[s][t] += g[s - ds][t - dt];
  for (auto [ds, dt] : even)
    for (int s = ds; s <= max_hodge; ++s)
      for (int t = dt; t <= n; ++t) g[s][t] += g[s - ds][t - dt];
  return g;
}

// First disagreement between `page` and `expected` on s <= max_s, or "".
std::string compare_dims(const spectral::PageReport& page, const Grid& expected, int max_s) {
  for (int s = 0; s <= max_s; ++s)
    for (int t = 0; t <= page.n; ++t)
      if (page.at(s, t) != expected[s][t])
        return "E" + std::to_string(page.r) + "^{" + std::to_string(s) + "," + std::to_string(t) + "} = " +
               std::to_string(page.at(s, t)) + ", expected " + std::to_string(expected[s][t]);
  return "";
}

// Empty if the valid region of `page` is the cohomology of a point.
std::string point_mismatch(const spectral::PageReport& page) {
  for (int s = 0; s <= page.max_hodge; ++s)
    for (int t = 0; t <= page.n; ++t)
      if (page.valid(s, t) && page.at(s, t) != (s == 0 && t == 0 ? 1u : 0u))
        return "E" + std::to_string(page.r) + "^{" + std::to_string(s) + "," + std::to_string(t) +
               "} = " + std::to_string(page.at(s, t));
  return "";
}

std::string column(const spectral::PageReport& page, int s) {
  std::string out = "(";
  for (int t = 0; t <= page.n; ++t) out += (t ? "," : "") + std::to_string(page.at(s, t));
  return out + ")";
}

Verdict finish(std::string id, std::string failure, std::string ok_witness, const Stopwatch& clock,
               double budget = 0) {
  Verdict v;
  v.id = std::move(id);
  v.seconds = clock.seconds();
  if (failure.empty() && budget > 0 && v.seconds >= budget)
    failure = "exact results, but " + fmt_seconds(v.seconds) + " exceeds the " + fmt_seconds(budget) + " budget";
  v.pass = failure.empty();
  v.witness = v.pass ? std::move(ok_witness) : std::move(failure);
  return v;
}

Verdict from_check(const sl2::Check& c) { return {c.id, c.p, c.pass, c.witness, 0}; }

// --- acceptance criteria ---------------------------------------------------

Verdict differential_axioms(std::size_t threads) {
  Stopwatch clock;
  constexpr int kMaxHodge = 8;
  // Identities over Z hold over every ring, so the larger algebras are
  // checked once over Z; the small ones are also checked ring by ring.
  struct Case {
    const char* algebra;
    std::vector<Ring> rings;
  };
  const std::vector<Ring> all = {Ring::integers(), Ring::rationals(), Ring::prime_field(3), Ring::prime_field(5),
                                 Ring::prime_field(7)};
  const std::vector<Case> cases = {
      {"sl2", all}, {"nonabelian2", all}, {"abelian:3", all}, {"sl3", {Ring::integers()}}, {"sp4", {Ring::integers()}}};
  std::size_t blocks = 0, columns = 0;
  std::string failure;
  for (const auto& cs : cases)
    for (const auto& ring : cs.rings) {
      const auto rep = check_differential_axioms(complex_of(cs.algebra, ring), kMaxHodge, threads);
      blocks += rep.blocks;
      columns += rep.columns;
      if (!rep.ok() && failure.empty()) failure = std::string(cs.algebra) + " over " + ring.name() + ": " + rep.failure;
    }
  return finish("differential-axioms", failure,
                std::to_string(blocks) + " blocks, " + std::to_string(columns) + " columns, s <= 8", clock, 60);
}

Verdict sl2_rational(std::size_t threads) {
  Stopwatch clock;
  constexpr int N = 10;
  const auto c = complex_of("sl2", Ring::rationals());
  const auto pages = spectral::compute_pages(c, {N}, 3, options(threads));
  std::string failure = compare_dims(pages[0], free_algebra_dims(N, 3, {{0, 3}}, {{2, 0}}), N);
  if (failure.empty()) failure = point_mismatch(pages[2]);
  if (failure.empty() && pages[1].rank_out(0, 3) != 1)
    failure = "rank d2 (0,3)->(2,0) = " + std::to_string(pages[1].rank_out(0, 3));
  return finish("sl2-rational", failure, "E1 = L(u) (x) Q[kappa] for s <= 10, E3 point, rank d2(u) = 1", clock, 10);
}

Verdict sl3_rational(std::size_t threads) {
  Stopwatch clock;
  constexpr int N = 6;
  const auto e1 = spectral::compute_E1(complex_of("sl3", Ring::rationals()), {N}, options(threads));
  const auto failure = compare_dims(e1, free_algebra_dims(N, 8, {{0, 3}, {0, 5}}, {{2, 0}, {3, 0}}), N);
  return finish("sl3-rational", failure, "E1 = L(u3,u5) (x) Q[c2,c3] for s <= 6", clock, 300);
}

Verdict sp4_rational(std::size_t threads) {
  Stopwatch clock;
  constexpr int N = 4;
  const auto e1 = spectral::compute_E1(complex_of("sp4", Ring::rationals()), {N}, options(threads));
  const auto expected = free_algebra_dims(N, 0, {}, {{2, 0}, {4, 0}});
  std::string got;
  bool match = true;
  for (int s = 0; s <= N; ++s) {
    got += (s ? "," : "") + std::to_string(e1.at(s, 0));
    match = match && e1.at(s, 0) == expected[s][0];
  }
  return finish("sp4-rational", match ? "" : "E1^{s,0} = (" + got + ")", "E1^{s,0} = (" + got + ") = Q[P1,P2]", clock,
                600);
}

Verdict sl2_low_hodge(std::size_t threads) {
  Stopwatch clock;
  const std::vector<std::uint32_t> primes = {3, 5, 7, 11};
  const auto rational = spectral::compute_E1(complex_of("sl2", Ring::rationals()), {9}, options(threads));
  Grid expected(10, std::vector<std::size_t>(4));
  for (int s = 0; s <= 9; ++s)
    for (int t = 0; t <= 3; ++t) expected[s][t] = rational.at(s, t);
  std::string failure;
  for (auto p : primes) {
    const int max_s = static_cast<int>(p) - 2;
    const auto e1 = spectral::compute_E1(complex_of("sl2", Ring::prime_field(p)), {max_s}, options(threads));
    const auto f = compare_dims(e1, expected, max_s);
    if (!f.empty() && failure.empty()) failure = "p = " + std::to_string(p) + ": " + f;
  }
  return finish("sl2-low-hodge", failure, "F_p dims = Q dims for s < p-1, p in {3,5,7,11}", clock);
}

Verdict sl2_phase_transition(std::size_t threads) {
  Stopwatch clock;
  std::string failure, witness;
  for (std::uint32_t p : {5u, 7u}) {
    const int ip = static_cast<int>(p);
    const auto c = complex_of("sl2", Ring::prime_field(p));
    const auto e1 = spectral::compute_E1(c, {ip + 1}, options(threads));
    const std::string at = column(e1, ip - 1), after = column(e1, ip);
    if (failure.empty() && at != "(1,3,3,1)") failure = "p = " + std::to_string(p) + ": s = p-1 column " + at;
    if (failure.empty() && after != "(3,4,1,0)") failure = "p = " + std::to_string(p) + ": s = p column " + after;
    for (int s = 0; s <= ip + 1 && failure.empty(); ++s) {
      const auto ep = spectral::euler_poincare_check(c, s, options(threads));
      if (!ep.ok() || ep.e1_sum != 0)
        failure = "p = " + std::to_string(p) + ", s = " + std::to_string(s) + ": Euler characteristic " +
                  std::to_string(ep.e1_sum);
    }
    witness += (witness.empty() ? "" : "; ") + std::string("p=") + std::to_string(p) + ": " + at + " " + after;
  }
  return finish("sl2-phase-transition", failure, witness + ", Euler characteristic 0 for s <= p+1", clock);
}

Verdict fundamental_suite() {
  Stopwatch clock;
  std::string failure;
  std::size_t checks = 0;
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u})
    for (const auto& c : sl2::fundamental_relations(p).checks()) {
      ++checks;
      if (!c.pass && failure.empty()) failure = c.id + " p=" + std::to_string(p) + ": " + c.witness;
    }
  return finish("fundamental-relations", failure, std::to_string(checks) + " relations for p in {3,5,7,11,13}", clock,
                120);
}

Verdict generator_table() {
  Stopwatch clock;
  std::string failure;
  std::size_t rows = 0;
  for (std::uint32_t p : {5u, 7u}) {
    const auto audit = sl2::audit_generator_table(p);
    for (const auto& r : audit.rows) {
      ++rows;
      if (!r.ok() && failure.empty()) failure = "p = " + std::to_string(p) + ": row " + r.name;
    }
    if (failure.empty() && !audit.ok()) failure = "p = " + std::to_string(p) + ": basis or isomorphism check";
  }
  return finish("generator-table", failure, std::to_string(rows) + " rows audited for p in {5,7}", clock);
}

Verdict weight_stratification(std::size_t threads) {
  Stopwatch clock;
  struct Case {
    const char* algebra;
    Ring ring;
    int max_hodge;
  };
  const std::vector<Case> cases = {{"sl2", Ring::rationals(), 8},
                                   {"sl2", Ring::prime_field(5), 8},
                                   {"nonabelian2", Ring::prime_field(3), 6}};
  std::string failure;
  for (const auto& cs : cases) {
    const auto c = complex_of(cs.algebra, cs.ring);
    const std::string label = std::string(cs.algebra) + " over " + cs.ring.name();
    const auto plain = spectral::compute_E1(c, {cs.max_hodge}, options(threads, false));
    const auto strat = spectral::stratify(c, {cs.max_hodge}, 1, options(threads));
    Grid sum(plain.dims.size(), std::vector<std::size_t>(static_cast<std::size_t>(plain.n) + 1, 0));
    const std::int64_t p = cs.ring.characteristic();
    for (const auto& st : strat.strata) {
      bool concentrated = true;
      for (auto w : st.weight) concentrated = concentrated && (p == 0 ? w == 0 : w % p == 0);
      for (int s = 0; s <= cs.max_hodge; ++s)
        for (int t = 0; t <= plain.n; ++t) {
          const auto d = st.pages.front().at(s, t);
          sum[s][t] += d;
          if (d && !concentrated && failure.empty())
            failure = label + ": E1^{" + std::to_string(s) + "," + std::to_string(t) + "} has weight " +
                      std::to_string(st.weight.front());
        }
    }
    if (failure.empty()) {
      const auto f = compare_dims(plain, sum, cs.max_hodge);
      if (!f.empty()) failure = label + ": stratum sums differ, " + f;
    }
  }
  return finish("weight-stratification", failure, "sl2/Q, sl2/F5, nonabelian2/F3", clock);
}

Verdict nonabelian2_sequence(std::size_t threads) {
  Stopwatch clock;
  std::string failure;
  {
    constexpr int N = 8;
    const auto pages = spectral::compute_pages(complex_of("nonabelian2", Ring::rationals()), {N}, 2, options(threads));
    failure = compare_dims(pages[0], free_algebra_dims(N, 2, {{0, 1}}, {{1, 0}}), N);
    if (failure.empty()) failure = point_mismatch(pages[1]);
    if (!failure.empty()) failure = "Q: " + failure;
  }
  for (std::uint32_t p : {3u, 5u}) {
    if (!failure.empty()) break;
    const int ip = static_cast<int>(p), N = 2 * ip;
    const auto pages = spectral::compute_pages(complex_of("nonabelian2", Ring::prime_field(p)), {N}, 2, options(threads));
    failure = compare_dims(pages[0], free_algebra_dims(N, 2, {{0, 1}, {ip - 1, 1}}, {{1, 0}, {ip, 0}}), N);
    if (failure.empty()) failure = point_mismatch(pages[1]);
    if (!failure.empty()) failure = "F" + std::to_string(p) + ": " + failure;
  }
  return finish("nonabelian2-sequence", failure, "E1 free on the stated generators, E2 point over Q, F3, F5", clock);
}

Verdict integral_torsion(std::size_t threads) {
  Stopwatch clock;
  constexpr int N = 6;
  const auto c = complex_of("sl2", Ring::integers());
  const auto table = torsion::integral_table(c, {N}, options(threads));
  std::string failure;
  std::size_t entries = 0;
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    for (const auto& e : torsion::ucf_compare(c, table, p, {N}, options(threads))) {
      ++entries;
      if (e.verdict == torsion::Verdict::Violation && failure.empty())
        failure = "universal coefficients fail at p = " + std::to_string(p) + ", (s,t) = (" + std::to_string(e.s) +
                  "," + std::to_string(e.t) + ")";
    }
  const auto primes = torsion::torsion_primes(table);
  const auto it = primes.first_hodge.find(mpz_class(3));
  const int first = it == primes.first_hodge.end() ? -1 : it->second;
  if (failure.empty() && (first != kSl2FirstThreeTorsion || first > 4))
    failure = "3-torsion first at s = " + std::to_string(first) + ", oracle says " +
              std::to_string(kSl2FirstThreeTorsion);
  return finish("integral-torsion", failure,
                std::to_string(entries) + " UCF entries for p in {2,3,5,7}, 3-torsion first at s = " +
                    std::to_string(first),
                clock, 300);
}

Verdict exact_sequence_suite() {
  Stopwatch clock;
  std::string failure;
  for (int s = 3; s <= 8; ++s) {
    const auto c = sl2::exact_sequence(5, s);
    if (!c.pass && failure.empty()) failure = "s = " + std::to_string(s) + ": " + c.witness;
  }
  Verdict v = finish("exact-sequence", failure, "d1 sequence exact for sl2/F5, s = 3..8", clock);
  v.p = 5;
  return v;
}

// --- suites ----------------------------------------------------------------

std::vector<Verdict> sl2_suite(const Config& cfg) {
  std::vector<Verdict> out;
  auto add = [&](const sl2::Check& c) { out.push_back(from_check(c)); };
  for (auto p : cfg.primes) {
    if (p == 2 || !is_prime(p)) throw DomainError("sl2 suite needs odd primes, got " + std::to_string(p));
    const int ip = static_cast<int>(p);
    for (const auto& c : sl2::check_beta_operators(p)) add(c);
    for (const auto& c : sl2::check_calculus_identities(p, ip + 1)) add(c);
    add(sl2::check_koszul_agreement(p, ip + 1));
    const auto h0 = sl2::h0_structure(p, 2 * ip);
    out.push_back({"h0-structure", p, h0.ok(), "H0 = F_p[kappa, s0, s-, s+]/(kappa^p - s0^2 - s- s+), degree <= " +
                                                   std::to_string(2 * ip)});
    for (const auto& c : sl2::fundamental_relations(p).checks()) add(c);
    const auto audit = sl2::audit_generator_table(p);
    out.push_back({"generator-table", p, audit.ok(),
                   std::to_string(audit.rows.size()) + " rows" + (audit.partial ? ", partial table for p < 5" : "")});
    for (const auto& c : sl2::weight_lemmas(p, ip + 1)) add(c);
    add(sl2::e2_description(p, 2 * ip));
    for (int s = ip - 2; s <= ip + 3; ++s) add(sl2::exact_sequence(p, s));
  }
  return out;
}

std::vector<Verdict> koszul_suite(const Config& cfg) {
  std::vector<Verdict> out;
  struct Case {
    const char* algebra;
    int max_hodge;
  };
  for (const auto& cs : std::vector<Case>{{"abelian:3", 8}, {"nonabelian2", 8}, {"sl2", 8}, {"sl3", 5}, {"sp4", 4}, {"so4", 4}})
    for (const auto& ring : {Ring::integers(), Ring::rationals(), Ring::prime_field(3)}) {
      Stopwatch clock;
      const auto rep = check_differential_axioms(complex_of(cs.algebra, ring), cs.max_hodge, cfg.threads);
      out.push_back(finish(std::string("axioms-") + cs.algebra + "-" + ring.name(), rep.failure,
                           std::to_string(rep.blocks) + " blocks, s <= " + std::to_string(cs.max_hodge), clock));
      out.back().p = ring.characteristic();
    }
  return out;
}

}  // namespace

Suite parse_suite(std::string_view text) {
  if (text == "sl2") return Suite::Sl2;
  if (text == "koszul") return Suite::Koszul;
  if (text == "spectral") return Suite::Spectral;
  if (text == "torsion") return Suite::Torsion;
  if (text == "all") return Suite::All;
  throw DomainError("unknown suite '" + std::string(text) + "' (expected sl2, koszul, spectral, torsion or all)");
}

Verdict criterion(int k, std::size_t threads) {
  switch (k) {
    case 1: return differential_axioms(threads);
    case 2: return sl2_rational(threads);
    case 3: return sl3_rational(threads);
    case 4: return sp4_rational(threads);
    case 5: return sl2_low_hodge(threads);
    case 6: return sl2_phase_transition(threads);
    case 7: return fundamental_suite();
    case 8: return generator_table();
    case 9: return weight_stratification(threads);
    case 10: return nonabelian2_sequence(threads);
    case 11: return integral_torsion(threads);
    case 12: return exact_sequence_suite();
    default: throw DomainError("no acceptance criterion " + std::to_string(k));
  }
}

std::vector<Verdict> run_suite(Suite suite, const Config& cfg) {
  auto criteria = [&](std::initializer_list<int> ks) {
    std::vector<Verdict> out;
    for (int k : ks) out.push_back(criterion(k, cfg.threads));
    return out;
  };
  switch (suite) {
    case Suite::Sl2: return sl2_suite(cfg);
    case Suite::Koszul: return koszul_suite(cfg);
    case Suite::Spectral: return criteria({2, 3, 4, 5, 6, 9, 10});
    case Suite::Torsion: return criteria({11});
    case Suite::All: break;
  }
  std::vector<Verdict> out;
  for (int k = 1; k <= kCriteria; ++k) out.push_back(criterion(k, cfg.threads));
  return out;
}

std::string render_line(const Verdict& v, bool timings) {
  std::ostringstream out;
  out << (v.pass ? "PASS " : "FAIL ") << v.id << " p=" << v.p;
  if (!v.witness.empty()) out << ' ' << v.witness;
  if (timings) out << " [" << fmt_seconds(v.seconds) << ']';
  return out.str();
}

nlohmann::ordered_json to_json(const std::vector<Verdict>& verdicts, bool timings) {
  auto a = nlohmann::ordered_json::array();
  for (const auto& v : verdicts) {
    nlohmann::ordered_json j;
    j["id"] = v.id;
    j["p"] = v.p;
    j["pass"] = v.pass;
    j["witness"] = v.witness;
    if (timings) j["seconds"] = v.seconds;
    a.push_back(std::move(j));
  }
  return a;
}

bool all_pass(const std::vector<Verdict>& verdicts) {
  for (const auto& v : verdicts)
    if (!v.pass) return false;
  return true;
}

}  // namespace lieseq::verify
