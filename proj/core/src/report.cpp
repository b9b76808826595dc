#include "lieseq/report.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "lieseq/error.hpp"

namespace lieseq::report {

using torsion::PrimePower;

namespace {

nlohmann::ordered_json page_to_json(const spectral::PageReport& page) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array(), valid = nlohmann::ordered_json::array();
  for (int s = 0; s <= page.max_hodge; ++s)
    for (int t = 0; t <= page.n; ++t) {
      entries.push_back({s, t, page.at(s, t)});
      if (page.valid(s, t)) valid.push_back({s, t});
    }
  nlohmann::ordered_json j;
  j["r"] = page.r;
  j["entries"] = std::move(entries);
  j["valid"] = std::move(valid);
  return j;
}

spectral::PageReport page_from_json(const nlohmann::json& j, int max_hodge) {
  spectral::PageReport page;
  page.r = j.at("r").get<int>();
  page.max_hodge = max_hodge;
  int n = -1;
  for (const auto& e : j.at("entries")) n = std::max(n, e.at(1).get<int>());
  if (n < 0) throw ParseError("page without entries");
  page.n = n;
  page.dims.assign(static_cast<std::size_t>(max_hodge) + 1, std::vector<std::size_t>(static_cast<std::size_t>(n) + 1, 0));
  std::size_t count = 0;
  for (const auto& e : j.at("entries")) {
    const int s = e.at(0).get<int>(), t = e.at(1).get<int>();
    if (s < 0 || s > max_hodge || t < 0) throw ParseError("page entry outside the window");
    page.dims[s][t] = e.at(2).get<std::size_t>();
    ++count;
  }
  if (count != page.dims.size() * (static_cast<std::size_t>(n) + 1)) throw ParseError("page entries incomplete");
  std::size_t valid = 0;
  for (const auto& v : j.at("valid")) {
    if (!page.valid(v.at(0).get<int>(), v.at(1).get<int>())) throw ParseError("valid region disagrees with r and N");
    ++valid;
  }
  std::size_t expected = 0;
  for (int s = 0; s <= max_hodge; ++s)
    for (int t = 0; t <= n; ++t) expected += page.valid(s, t);
  if (valid != expected) throw ParseError("valid region disagrees with r and N");
  return page;
}

nlohmann::ordered_json weight_json(const WeightVector& w) {
  auto a = nlohmann::ordered_json::array();
  for (auto x : w) a.push_back(x);
  return a;
}

std::string csv_pages(const SpectralRun& run) {
  std::ostringstream out;
  out << "stratum,r,s,t,dim,valid\n";
  auto emit = [&](const std::string& label, const std::vector<spectral::PageReport>& pages) {
    for (const auto& page : pages)
      for (int s = 0; s <= page.max_hodge; ++s)
        for (int t = 0; t <= page.n; ++t)
          out << label << ',' << page.r << ',' << s << ',' << t << ',' << page.at(s, t) << ','
              << (page.valid(s, t) ? 1 : 0) << '\n';
  };
  emit("all", run.pages);
  if (run.strata)
    for (const auto& st : run.strata->strata) {
      std::string label = "\"";
      for (std::size_t k = 0; k < st.weight.size(); ++k) label += (k ? "," : "") + std::to_string(st.weight[k]);
      emit(label + "\"", st.pages);
    }
  return out.str();
}

std::string weight_label(const WeightVector& w) {
  std::string out = "weight (";
  for (std::size_t k = 0; k < w.size(); ++k) out += (k ? "," : "") + std::to_string(w[k]);
  return out + ")";
}

PrimePower parse_prime_power(const std::string& text) {
  const auto caret = text.find('^');
  PrimePower pp;
  try {
    pp.prime = mpz_class(text.substr(0, caret));
    pp.exponent = caret == std::string::npos ? 1u : static_cast<unsigned>(std::stoul(text.substr(caret + 1)));
  } catch (const std::exception&) {
    throw ParseError("bad prime power '" + text + "'");
  }
  if (pp.exponent == 0 || pp.prime < 2 || mpz_probab_prime_p(pp.prime.get_mpz_t(), 30) == 0)
    throw ParseError("bad prime power '" + text + "'");
  return pp;
}

std::string torsion_text(const torsion::IntegralCohomology& h) {
  if (h.torsion.empty()) return "-";
  std::string out;
  for (std::size_t k = 0; k < h.torsion.size(); ++k) out += (k ? " " : "") + h.torsion[k].to_string();
  return out;
}

}  // namespace

Format parse_format(std::string_view text) {
  if (text == "json") return Format::Json;
  if (text == "grid") return Format::Grid;
  if (text == "csv") return Format::Csv;
  throw DomainError("unknown format '" + std::string(text) + "' (expected json, grid or csv)");
}

nlohmann::ordered_json to_json(const SpectralRun& run) {
  nlohmann::ordered_json j;
  j["algebra"] = run.algebra;
  j["ring"] = run.ring;
  j["N"] = run.max_hodge;
  auto pages = nlohmann::ordered_json::array();
  for (const auto& p : run.pages) pages.push_back(page_to_json(p));
  j["pages"] = std::move(pages);
  if (run.strata) {
    auto strata = nlohmann::ordered_json::array();
    for (const auto& st : run.strata->strata) {
      nlohmann::ordered_json s;
      s["weight"] = weight_json(st.weight);
      auto sp = nlohmann::ordered_json::array();
      for (const auto& p : st.pages) sp.push_back(page_to_json(p));
      s["pages"] = std::move(sp);
      strata.push_back(std::move(s));
    }
    j["strata"] = std::move(strata);
  }
  return j;
}

SpectralRun spectral_from_json(const nlohmann::json& j) {
  try {
    SpectralRun run;
    run.algebra = j.at("algebra").get<std::string>();
    run.ring = j.at("ring").get<std::string>();
    run.max_hodge = j.at("N").get<int>();
    if (run.max_hodge < 0) throw ParseError("N must be nonnegative");
    for (const auto& p : j.at("pages")) run.pages.push_back(page_from_json(p, run.max_hodge));
    if (!run.pages.empty()) run.n = run.pages.front().n;
    if (j.contains("strata")) {
      spectral::StratifiedReport strata;
      for (const auto& s : j.at("strata")) {
        spectral::StratumReport st;
        st.weight = s.at("weight").get<WeightVector>();
        for (const auto& p : s.at("pages")) st.pages.push_back(page_from_json(p, run.max_hodge));
        strata.strata.push_back(std::move(st));
      }
      run.strata = std::move(strata);
    }
    return run;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("spectral report JSON: ") + e.what());
  }
}

std::string render_grid(const spectral::PageReport& page, std::string_view title) {
  std::size_t width = 1;
  for (int s = 0; s <= page.max_hodge; ++s) {
    width = std::max(width, std::to_string(s).size());
    for (int t = 0; t <= page.n; ++t) width = std::max(width, std::to_string(page.at(s, t)).size());
  }
  const std::string label_pad(std::to_string(page.n).size() + 2, ' ');
  std::ostringstream out;
  out << title << '\n';
  for (int t = page.n; t >= 0; --t) {
    std::string label = "t=" + std::to_string(t);
    label.resize(label_pad.size() + 1, ' ');
    out << label << '|';
    for (int s = 0; s <= page.max_hodge; ++s) {
      std::string cell = !page.valid(s, t) ? "?" : page.at(s, t) == 0 ? "." : std::to_string(page.at(s, t));
      out << ' ' << std::string(width - cell.size(), ' ') << cell;
    }
    out << '\n';
  }
  out << std::string(label_pad.size() + 1, ' ') << '+' << std::string((width + 1) * (page.max_hodge + 1), '-') << '\n';
  out << std::string(label_pad.size() + 2, ' ');
  for (int s = 0; s <= page.max_hodge; ++s) {
    const std::string cell = std::to_string(s);
    out << ' ' << std::string(width - cell.size(), ' ') << cell;
  }
  out << "  s\n";
  return out.str();
}

std::string render(const SpectralRun& run, Format f) {
  switch (f) {
    case Format::Json: return to_json(run).dump(2) + "\n";
    case Format::Csv: return csv_pages(run);
    case Format::Grid: break;
  }
  std::ostringstream out;
  const std::string head = run.algebra + " over " + run.ring + ", N=" + std::to_string(run.max_hodge);
  for (std::size_t k = 0; k < run.pages.size(); ++k) {
    if (k) out << '\n';
    out << render_grid(run.pages[k], "E_" + std::to_string(run.pages[k].r) + "  " + head);
  }
  if (run.strata)
    for (const auto& st : run.strata->strata)
      for (const auto& page : st.pages)
        out << '\n' << render_grid(page, "E_" + std::to_string(page.r) + "  " + head + ", " + weight_label(st.weight));
  return out.str();
}

nlohmann::ordered_json to_json(const torsion::IntegralCohomology& h) {
  nlohmann::ordered_json j;
  j["s"] = h.s;
  j["t"] = h.t;
  j["free_rank"] = h.free_rank;
  auto tors = nlohmann::ordered_json::array();
  for (const auto& q : h.torsion) tors.push_back(q.to_string());
  j["torsion"] = std::move(tors);
  return j;
}

nlohmann::ordered_json to_json(const TorsionRun& run) {
  nlohmann::ordered_json j;
  j["algebra"] = run.algebra;
  j["N"] = run.max_hodge;
  auto table = nlohmann::ordered_json::array();
  for (const auto& h : run.table) table.push_back(to_json(h));
  j["table"] = std::move(table);
  nlohmann::ordered_json first = nlohmann::ordered_json::object();
  for (const auto& [p, s] : torsion::torsion_primes(run.table).first_hodge) first[p.get_str()] = s;
  j["first_hodge"] = std::move(first);
  return j;
}

TorsionRun torsion_from_json(const nlohmann::json& j) {
  try {
    TorsionRun run;
    run.algebra = j.at("algebra").get<std::string>();
    run.max_hodge = j.at("N").get<int>();
    for (const auto& e : j.at("table")) {
      torsion::IntegralCohomology h;
      h.s = e.at("s").get<int>();
      h.t = e.at("t").get<int>();
      if (h.s < 0 || h.s > run.max_hodge || h.t < 0) throw ParseError("torsion entry outside the window");
      h.free_rank = e.at("free_rank").get<std::size_t>();
      for (const auto& q : e.at("torsion")) h.torsion.push_back(parse_prime_power(q.get<std::string>()));
      run.table.push_back(std::move(h));
    }
    std::map<std::string, int> stated, derived;
    for (const auto& [p, s] : j.at("first_hodge").items()) stated[p] = s.get<int>();
    for (const auto& [p, s] : torsion::torsion_primes(run.table).first_hodge) derived[p.get_str()] = s;
    if (stated != derived) throw ParseError("first_hodge disagrees with the table");
    return run;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("torsion JSON: ") + e.what());
  }
}

std::string render(const TorsionRun& run, Format f) {
  std::ostringstream out;
  switch (f) {
    case Format::Json: return to_json(run).dump(2) + "\n";
    case Format::Csv:
      out << "s,t,free_rank,torsion\n";
      for (const auto& h : run.table) out << h.s << ',' << h.t << ',' << h.free_rank << ',' << torsion_text(h) << '\n';
      return out.str();
    case Format::Grid: break;
  }
  out << run.algebra << " over Z, N=" << run.max_hodge << '\n';
  int current = -1;
  for (const auto& h : run.table) {
    if (h.s != current) {
      current = h.s;
      out << "s=" << h.s << '\n';
    }
    out << "  H^" << h.t << "  free " << h.free_rank << "  torsion " << torsion_text(h) << '\n';
  }
  out << "first torsion:";
  const auto first = torsion::torsion_primes(run.table).first_hodge;
  if (first.empty()) out << " none";
  for (const auto& [p, s] : first) out << ' ' << p.get_str() << "@s=" << s;
  out << '\n';
  return out.str();
}

bool UcfRun::ok() const {
  for (const auto& [p, entries] : by_prime)
    for (const auto& e : entries)
      if (e.verdict == torsion::Verdict::Violation) return false;
  return true;
}

nlohmann::ordered_json to_json(const UcfRun& run) {
  auto a = nlohmann::ordered_json::array();
  for (const auto& [p, entries] : run.by_prime)
    for (const auto& e : entries) {
      nlohmann::ordered_json j;
      j["p"] = p;
      j["s"] = e.s;
      j["t"] = e.t;
      j["dim_q"] = e.dim_q;
      j["dim_fp"] = e.dim_fp;
      j["free_rank"] = e.free_rank;
      j["torsion_here"] = e.torsion_here;
      j["torsion_next"] = e.torsion_next;
      j["verdict"] = torsion::to_string(e.verdict);
      a.push_back(std::move(j));
    }
  return a;
}

std::string render(const UcfRun& run, Format f) {
  std::ostringstream out;
  switch (f) {
    case Format::Json: return to_json(run).dump(2) + "\n";
    case Format::Csv:
      out << "p,s,t,dim_q,dim_fp,free_rank,torsion_here,torsion_next,verdict\n";
      for (const auto& [p, entries] : run.by_prime)
        for (const auto& e : entries)
          out << p << ',' << e.s << ',' << e.t << ',' << e.dim_q << ',' << e.dim_fp << ',' << e.free_rank << ','
              << e.torsion_here << ',' << e.torsion_next << ',' << torsion::to_string(e.verdict) << '\n';
      return out.str();
    case Format::Grid: break;
  }
  for (const auto& [p, entries] : run.by_prime) {
    out << run.algebra << ", p=" << p << ", N=" << run.max_hodge << '\n';
    for (const auto& e : entries)
      out << "  (" << e.s << ',' << e.t << ")  dim_Q " << e.dim_q << "  dim_F" << p << ' ' << e.dim_fp << "  = "
          << e.free_rank << " + " << e.torsion_here << " + " << e.torsion_next << "  " << torsion::to_string(e.verdict)
          << '\n';
  }
  return out.str();
}

}  // namespace lieseq::report
