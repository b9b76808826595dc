#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace lieseq::verify {

// p = 0 stands for characteristic zero or for checks spanning several rings.
struct Verdict {
  std::string id;
  std::uint32_t p = 0;
  bool pass = false;
  std::string witness;
  double seconds = 0;
};

enum class Suite { Sl2, Koszul, Spectral, Torsion, All };

// "sl2", "koszul", "spectral", "torsion", "all".
Suite parse_suite(std::string_view text);

struct Config {
  // Used by the sl2 suite; the other suites fix their own primes.
  std::vector<std::uint32_t> primes = {3, 5, 7};
  std::size_t threads = 1;
};

// `All` is the acceptance battery, one verdict per criterion.
std::vector<Verdict> run_suite(Suite suite, const Config& cfg);

inline constexpr int kCriteria = 12;
// Criterion k of the acceptance battery, 1 <= k <= kCriteria.
Verdict criterion(int k, std::size_t threads = 1);

// "PASS <id> p=<p> <witness>", plus " [<seconds>s]" with timings. Without
// timings the output is deterministic.
std::string render_line(const Verdict& v, bool timings = false);
nlohmann::ordered_json to_json(const std::vector<Verdict>& verdicts, bool timings = false);
bool all_pass(const std::vector<Verdict>& verdicts);

}  // namespace lieseq::verify
