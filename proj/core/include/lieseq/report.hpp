#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lieseq/spectral.hpp"
#include "lieseq/torsion.hpp"

namespace lieseq::report {

enum class Format { Json, Grid, Csv };

// "json", "grid", "csv"; throws DomainError otherwise.
Format parse_format(std::string_view text);

// A page computation as rendered by the CLI.
struct SpectralRun {
  std::string algebra;
  std::string ring;
  int max_hodge = 0;
  int n = 0;
  std::vector<spectral::PageReport> pages;
  std::optional<spectral::StratifiedReport> strata;
};

// {"algebra","ring","N","pages":[{"r","entries":[[s,t,dim]...],"valid":[[s,t]...]}],"strata"?}.
// Entries list every (s,t) of the window, zeros included.
nlohmann::ordered_json to_json(const SpectralRun& run);
// Inverse of to_json. Ranks of d_r are not part of the schema and come back
// empty. Throws ParseError on schema violations.
SpectralRun spectral_from_json(const nlohmann::json& j);

// Rows t = n..0, columns s = 0..N; '.' for zero, '?' outside the valid region.
std::string render_grid(const spectral::PageReport& page, std::string_view title);
std::string render(const SpectralRun& run, Format f);

struct TorsionRun {
  std::string algebra;
  int max_hodge = 0;
  std::vector<torsion::IntegralCohomology> table;
};

nlohmann::ordered_json to_json(const torsion::IntegralCohomology& h);
// {"algebra","N","table":[{"s","t","free_rank","torsion":["p^k"...]}],"first_hodge":{"<p>": s}}.
nlohmann::ordered_json to_json(const TorsionRun& run);
// Throws ParseError on schema violations, including a first_hodge that does
// not match the table.
TorsionRun torsion_from_json(const nlohmann::json& j);
// Grid mode groups entries by s.
std::string render(const TorsionRun& run, Format f);

struct UcfRun {
  std::string algebra;
  int max_hodge = 0;
  std::vector<std::pair<std::uint32_t, std::vector<torsion::UcfEntry>>> by_prime;

  bool ok() const;
};

// JSON: [{"p","s","t","dim_q","dim_fp","free_rank","torsion_here","torsion_next","verdict"}].
nlohmann::ordered_json to_json(const UcfRun& run);
std::string render(const UcfRun& run, Format f);

}  // namespace lieseq::report
