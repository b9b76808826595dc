#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "lieseq/algebra_json.hpp"
#include "lieseq/builtins.hpp"
#include "lieseq/cochain.hpp"
#include "lieseq/error.hpp"
#include "lieseq/koszul.hpp"
#include "lieseq/report.hpp"
#include "lieseq/sl2_derham.hpp"
#include "lieseq/spectral.hpp"
#include "lieseq/torsion.hpp"
#include "lieseq/verify.hpp"

namespace lieseq::cli {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

class ValidationFailure : public Error {
 public:
  using Error::Error;
};

class VerifyFailure : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string algebra = "sl2";
  std::string ring;  // empty: the algebra's ring, with Z promoted to Q
  int max_hodge = 6;
  bool no_weights = false;
  std::string format = "grid";
  std::size_t threads = 1;
  std::vector<std::uint32_t> primes;
  std::size_t max_dim = builtin::kDefaultMaxDim;
};

std::string jacobi_message(const LieAlgebra& g, const JacobiReport& rep) {
  const auto& names = g.basis_names();
  std::ostringstream out;
  out << "Jacobi identity fails for (" << names[rep.triple[0]] << ", " << names[rep.triple[1]] << ", "
      << names[rep.triple[2]] << "): sum =";
  for (const auto& [k, v] : rep.residual) out << ' ' << (v < 0 ? "- " : "+ ") << (v < 0 ? -v : v) << '*' << names[k];
  return out.str();
}

Ring parse_ring(const std::string& text) {
  try {
    return Ring::parse(text);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

// Loads and validates the algebra. `integral` forces Z.
LieAlgebra load(const RunConfig& cfg, bool integral = false) {
  LieAlgebra g = load_algebra(cfg.algebra, cfg.max_dim);
  if (const auto rep = jacobi_check(g); !rep.ok) throw ValidationFailure(jacobi_message(g, rep));
  if (const auto why = weight_incompatibility(g)) throw ValidationFailure("weights: " + *why);
  if (integral) {
    if (!cfg.ring.empty() && parse_ring(cfg.ring) != Ring::integers())
      throw UsageError("integral cohomology needs --ring Z");
    if (g.ring() != Ring::integers()) {
      if (g.ring().is_prime_field()) throw UsageError("algebra '" + g.name() + "' is not defined over Z");
      g = g.with_ring(Ring::integers());
    }
  } else if (!cfg.ring.empty()) {
    g = g.with_ring(parse_ring(cfg.ring));
  } else if (g.ring() == Ring::integers()) {
    g = g.with_ring(Ring::rationals());
  }
  if (cfg.no_weights && g.has_weights()) g = g.without_weights();
  return g;
}

spectral::Options options(const RunConfig& cfg) {
  spectral::Options o;
  o.threads = cfg.threads;
  o.use_weights = !cfg.no_weights;
  return o;
}

report::Format format(const RunConfig& cfg) {
  try {
    return report::parse_format(cfg.format);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

void check_window(const RunConfig& cfg) {
  if (cfg.max_hodge < 0) throw UsageError("--max-hodge must be nonnegative");
  if (cfg.threads == 0) throw UsageError("--threads must be positive");
}

// One file per block, d0_s<s>_t<t>.txt and d1_s<s>_t<t>.txt, in the
// triplet format of write_triplets.
void dump_matrices(const KoszulComplex& c, int max_hodge, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  auto write = [&](const std::string& name, const SparseMatrix& m) {
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream f(path);
    if (!f) throw IoError("cannot write " + path.string());
    write_triplets(f, m);
    if (!f) throw IoError("write failed for " + path.string());
  };
  const int n = static_cast<int>(c.n());
  for (int s = 0; s <= max_hodge; ++s)
    for (int t = 0; t <= n; ++t) {
      const std::string tag = "_s" + std::to_string(s) + "_t" + std::to_string(t) + ".txt";
      if (t < n) write("d0" + tag, c.d0(s, t));
      if (s < max_hodge && t > 0) write("d1" + tag, c.d1(s, t));
    }
}

std::vector<std::uint32_t> odd_primes(const std::vector<std::uint32_t>& primes) {
  for (auto p : primes)
    if (p == 2 || !is_prime(p)) throw UsageError("expected odd primes, got " + std::to_string(p));
  return primes;
}

// --- commands --------------------------------------------------------------

void cmd_algebra(const RunConfig& cfg, std::ostream& out) {
  out << serialize_algebra(load(cfg)) << '\n';
}

void cmd_pages(const RunConfig& cfg, int last, bool stratify, const std::string& dump, std::ostream& out) {
  check_window(cfg);
  const auto fmt = format(cfg);
  const KoszulComplex c(load(cfg));
  if (!c.ring().is_field()) throw UsageError("pages need a field; use the torsion command over Z");
  if (!dump.empty()) dump_matrices(c, cfg.max_hodge, dump);
  report::SpectralRun run;
  run.algebra = c.algebra().name();
  run.ring = c.ring().name();
  run.max_hodge = cfg.max_hodge;
  run.n = static_cast<int>(c.n());
  const auto opt = options(cfg);
  run.pages = last == 1 ? std::vector{spectral::compute_E1(c, {cfg.max_hodge}, opt)}
                        : spectral::compute_pages(c, {cfg.max_hodge}, last, opt);
  if (stratify) {
    if (!c.algebra().has_weights()) throw UsageError("algebra '" + run.algebra + "' has no weights to stratify by");
    run.strata = spectral::stratify(c, {cfg.max_hodge}, static_cast<int>(run.pages.size()), opt);
  }
  out << report::render(run, fmt);
}

void cmd_torsion(const RunConfig& cfg, std::ostream& out) {
  check_window(cfg);
  const auto fmt = format(cfg);
  const KoszulComplex c(load(cfg, true));
  report::TorsionRun run{c.algebra().name(), cfg.max_hodge, torsion::integral_table(c, {cfg.max_hodge}, options(cfg))};
  out << report::render(run, fmt);
}

void cmd_ucf(const RunConfig& cfg, std::ostream& out) {
  check_window(cfg);
  const auto fmt = format(cfg);
  const KoszulComplex c(load(cfg, true));
  const auto table = torsion::integral_table(c, {cfg.max_hodge}, options(cfg));
  report::UcfRun run{c.algebra().name(), cfg.max_hodge, {}};
  const auto primes = cfg.primes.empty() ? std::vector<std::uint32_t>{2, 3, 5, 7} : cfg.primes;
  for (auto p : primes) {
    if (!is_prime(p)) throw UsageError(std::to_string(p) + " is not prime");
    run.by_prime.emplace_back(p, torsion::ucf_compare(c, table, p, {cfg.max_hodge}, options(cfg)));
  }
  out << report::render(run, fmt);
  if (!run.ok()) throw VerifyFailure("universal coefficient comparison failed");
}

void cmd_axioms(const RunConfig& cfg, std::ostream& out) {
  check_window(cfg);
  const auto g = load(cfg);
  const KoszulComplex c(cfg.ring.empty() && !g.ring().is_prime_field() ? g.with_ring(Ring::integers()) : g);
  const auto rep = check_differential_axioms(c, cfg.max_hodge, cfg.threads);
  out << c.algebra().name() << " over " << c.ring().name() << ", s <= " << cfg.max_hodge << ": " << rep.blocks
      << " blocks, " << rep.columns << " columns: "
      << (rep.ok() ? "d0^2 = 0, d1^2 = 0, d0 d1 + d1 d0 = 0" : rep.failure) << '\n';
  if (!rep.ok()) throw ValidationFailure(rep.failure);
}

void cmd_generators(std::uint32_t p, const std::string& fmt_text, std::ostream& out) {
  odd_primes({p});
  const auto fmt = report::parse_format(fmt_text);
  const auto c = sl2::sl2_complex(p);
  const auto table = sl2::generator_table(p);
  const auto audit = sl2::audit_generator_table(p);
  if (fmt == report::Format::Json) {
    auto a = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < table.size(); ++k) {
      nlohmann::ordered_json j;
      j["name"] = table[k].name;
      j["s"] = table[k].s;
      j["t"] = table[k].t;
      j["w"] = table[k].w;
      j["rep"] = to_string(c, table[k].rep);
      if (table[k].d1_target) j["d1"] = *table[k].d1_target;
      j["ok"] = k < audit.rows.size() && audit.rows[k].ok();
      a.push_back(std::move(j));
    }
    nlohmann::ordered_json j;
    j["p"] = p;
    j["generators"] = std::move(a);
    j["audit"] = audit.ok();
    out << j.dump(2) << '\n';
    return;
  }
  if (fmt == report::Format::Csv) out << "name,s,t,w,ok\n";
  for (std::size_t k = 0; k < table.size(); ++k) {
    const auto& g = table[k];
    const bool ok = k < audit.rows.size() && audit.rows[k].ok();
    if (fmt == report::Format::Csv) {
      out << g.name << ',' << g.s << ',' << g.t << ',' << g.w << ',' << (ok ? 1 : 0) << '\n';
      continue;
    }
    out << (ok ? "ok   " : "BAD  ") << g.name << "  (" << g.s << ',' << g.t << ")  w=" << g.w;
    if (g.d1_target) out << "  d1 -> " << *g.d1_target;
    out << "\n       " << to_string(c, g.rep) << '\n';
  }
  if (fmt == report::Format::Grid)
    out << "audit over F" << p << (audit.partial ? " (partial table)" : "") << ": " << (audit.ok() ? "PASS" : "FAIL")
        << '\n';
  if (!audit.ok()) throw VerifyFailure("generator table audit failed");
}

void cmd_verify(const RunConfig& cfg, const std::string& suite, int only, bool timings, std::ostream& out) {
  const auto fmt = format(cfg);
  if (cfg.threads == 0) throw UsageError("--threads must be positive");
  verify::Config vc;
  vc.threads = cfg.threads;
  if (!cfg.primes.empty()) vc.primes = odd_primes(cfg.primes);
  std::vector<verify::Verdict> verdicts;
  if (only) {
    if (only < 1 || only > verify::kCriteria) throw UsageError("--criterion must be in 1.." + std::to_string(verify::kCriteria));
    verdicts.push_back(verify::criterion(only, cfg.threads));
  } else {
    verify::Suite s;
    try {
      s = verify::parse_suite(suite);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    verdicts = verify::run_suite(s, vc);
  }
  switch (fmt) {
    case report::Format::Json: out << verify::to_json(verdicts, timings).dump(2) << '\n'; break;
    case report::Format::Csv:
      out << "id,p,pass,witness" << (timings ? ",seconds" : "") << '\n';
      for (const auto& v : verdicts) {
        out << v.id << ',' << v.p << ',' << (v.pass ? 1 : 0) << ",\"" << v.witness << '"';
        if (timings) out << ',' << v.seconds;
        out << '\n';
      }
      break;
    case report::Format::Grid:
      for (const auto& v : verdicts) out << verify::render_line(v, timings) << '\n';
      break;
  }
  if (!verify::all_pass(verdicts)) throw VerifyFailure("verification failed");
}

// --- option wiring ---------------------------------------------------------

void add_algebra_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-a,--algebra", cfg.algebra, "builtin name (sl2, sl3, sp4, so5, nonabelian2, abelian:3, A+B) or JSON file")
      ->capture_default_str();
  sub->add_option("--max-dim", cfg.max_dim, "refuse algebras above this dimension")->capture_default_str();
  sub->add_flag("--no-weights", cfg.no_weights, "ignore the weight grading");
}

void add_window_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-N,--max-hodge", cfg.max_hodge, "Hodge truncation: s <= N")->capture_default_str();
  sub->add_option("-j,--threads", cfg.threads, "worker threads")->envname("LIESEQ_THREADS")->capture_default_str();
}

void add_format_option(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-f,--format", cfg.format, "json, grid or csv")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hodge-filtered spectral sequences of Lie algebra cohomology", "lieseq"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::function<void()> action;
  std::string command;

  auto* algebra = app.add_subcommand("algebra", "validate an algebra and print its canonical JSON");
  add_algebra_options(algebra, cfg);
  algebra->add_option("-r,--ring", cfg.ring, "Z, Q or Fp:<p>");
  algebra->callback([&] { action = [&] { cmd_algebra(cfg, out); }; });

  std::string dump;
  bool stratify = false;
  auto* e1 = app.add_subcommand("e1", "E_1 = H*(g, S^s(g*)) on the window s <= N");
  add_algebra_options(e1, cfg);
  e1->add_option("-r,--ring", cfg.ring, "Q or Fp:<p> (default Q)");
  add_window_options(e1, cfg);
  add_format_option(e1, cfg);
  e1->add_flag("--stratify", stratify, "also report every weight stratum");
  e1->add_option("--dump-matrices", dump, "write d0 and d1 blocks as 'row col value' files into this directory");
  e1->callback([&] { action = [&] { cmd_pages(cfg, 1, stratify, dump, out); }; });

  int last = 0;
  auto* pages = app.add_subcommand("pages", "pages E_1..E_r; by default until the sequence stabilises");
  add_algebra_options(pages, cfg);
  pages->add_option("-r,--ring", cfg.ring, "Q or Fp:<p> (default Q)");
  add_window_options(pages, cfg);
  add_format_option(pages, cfg);
  pages->add_option("--last", last, "last page to compute (0: until stable)")->check(CLI::NonNegativeNumber);
  pages->add_flag("--stratify", stratify, "also report every weight stratum");
  pages->add_option("--dump-matrices", dump, "write d0 and d1 blocks as 'row col value' files into this directory");
  pages->callback([&] { action = [&] { cmd_pages(cfg, last, stratify, dump, out); }; });

  int strata_pages = 1;
  auto* strat = app.add_subcommand("stratify", "pages split by weight");
  add_algebra_options(strat, cfg);
  strat->add_option("-r,--ring", cfg.ring, "Q or Fp:<p> (default Q)");
  add_window_options(strat, cfg);
  add_format_option(strat, cfg);
  strat->add_option("--pages", strata_pages, "number of pages per stratum")->check(CLI::PositiveNumber);
  strat->callback([&] { action = [&] { cmd_pages(cfg, strata_pages, true, "", out); }; });

  auto* tors = app.add_subcommand("torsion", "integral cohomology by Smith normal form");
  add_algebra_options(tors, cfg);
  tors->add_option("-r,--ring", cfg.ring, "must be Z");
  add_window_options(tors, cfg);
  add_format_option(tors, cfg);
  tors->callback([&] { action = [&] { cmd_torsion(cfg, out); }; });

  auto* ucf = app.add_subcommand("ucf", "compare F_p and Q dimensions with the integral cohomology");
  add_algebra_options(ucf, cfg);
  add_window_options(ucf, cfg);
  add_format_option(ucf, cfg);
  ucf->add_option("-p,--primes", cfg.primes, "primes to compare (default 2,3,5,7)")->delimiter(',');
  ucf->callback([&] { action = [&] { cmd_ucf(cfg, out); }; });

  auto* ax = app.add_subcommand("axioms", "check d0^2 = 0, d1^2 = 0 and d0 d1 + d1 d0 = 0 exactly");
  add_algebra_options(ax, cfg);
  ax->add_option("-r,--ring", cfg.ring, "Z, Q or Fp:<p> (default Z)");
  add_window_options(ax, cfg);
  ax->callback([&] { action = [&] { cmd_axioms(cfg, out); }; });

  std::uint32_t gen_prime = 5;
  auto* gens = app.add_subcommand("generators", "the 17 listed generators of E_1 for sl2 over F_p, audited");
  gens->add_option("-p,--prime", gen_prime, "odd prime")->capture_default_str();
  add_format_option(gens, cfg);
  gens->callback([&] { action = [&] { cmd_generators(gen_prime, cfg.format, out); }; });

  std::string suite = "all";
  int only = 0;
  bool timings = false;
  auto* ver = app.add_subcommand("verify", "run a verification suite; exits 3 on any FAIL");
  ver->add_option("-s,--suite", suite, "sl2, koszul, spectral, torsion or all")->capture_default_str();
  ver->add_option("-p,--primes", cfg.primes, "primes for the sl2 suite (default 3,5,7)")->delimiter(',');
  ver->add_option("-c,--criterion", only, "run one acceptance criterion");
  ver->add_flag("--timings", timings, "append wall-clock seconds");
  ver->add_option("-j,--threads", cfg.threads, "worker threads")->envname("LIESEQ_THREADS");
  add_format_option(ver, cfg);
  ver->callback([&] { action = [&] { cmd_verify(cfg, suite, only, timings, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  for (const auto* sub : app.get_subcommands()) command = sub->get_name();

  const std::string prefix = "lieseq " + command + ": ";
  try {
    action();
    return kOk;
  } catch (const UsageError& e) {
    err << prefix << e.what() << '\n';
    return kUsage;
  } catch (const VerifyFailure& e) {
    err << prefix << e.what() << '\n';
    return kVerifyFail;
  } catch (const IoError& e) {
    err << prefix << e.what() << '\n';
    return kIo;
  } catch (const DomainError& e) {
    err << prefix << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << prefix << e.what() << '\n';
    return kValidation;
  }
}

}  // namespace lieseq::cli
