#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "lieseq/builtins.hpp"
#include "lieseq/error.hpp"
#include "lieseq/report.hpp"

using namespace lieseq;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "lieseq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

report::SpectralRun sl2_run() {
  const KoszulComplex c(builtin::sl(2).with_ring(Ring::prime_field(5)));
  report::SpectralRun run{"sl2", "Fp:5", 6, 3, spectral::compute_pages(c, {6}), std::nullopt};
  return run;
}

std::filesystem::path temp_dir(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / ("lieseq-test-" + name);
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST(Report, SpectralJsonRoundTrip) {
  const auto run = sl2_run();
  const auto j = report::to_json(run);
  const auto back = report::spectral_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.algebra, run.algebra);
  EXPECT_EQ(back.ring, run.ring);
  EXPECT_EQ(back.max_hodge, run.max_hodge);
  ASSERT_EQ(back.pages.size(), run.pages.size());
  for (std::size_t r = 0; r < run.pages.size(); ++r) {
    EXPECT_EQ(back.pages[r].r, run.pages[r].r);
    EXPECT_EQ(back.pages[r].dims, run.pages[r].dims);
  }
  EXPECT_EQ(report::to_json(back).dump(), j.dump());
}

TEST(Report, SpectralJsonRejectsBadSchema) {
  EXPECT_THROW(report::spectral_from_json(nlohmann::json::parse(R"({"algebra":"sl2"})")), ParseError);
  auto j = nlohmann::json::parse(report::to_json(sl2_run()).dump());
  j["pages"][0]["entries"][0] = {0, 0};
  EXPECT_THROW(report::spectral_from_json(j), ParseError);
}

TEST(Report, GridOrientation) {
  const auto grid = report::render_grid(sl2_run().pages[0], "E1");
  std::istringstream in(grid);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  // The t = 3 row comes before the t = 0 row.
  std::size_t top = lines.size(), bottom = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].rfind("t=3", 0) == 0) top = i;
    if (lines[i].rfind("t=0", 0) == 0) bottom = i;
  }
  ASSERT_LT(top, lines.size());
  ASSERT_LT(bottom, lines.size());
  EXPECT_LT(top, bottom);
}

TEST(Report, TorsionJsonRoundTripAndConsistency) {
  const KoszulComplex c(builtin::sl(2));
  const report::TorsionRun run{"sl2", 4, torsion::integral_table(c, {4})};
  const auto j = report::to_json(run);
  const auto back = report::torsion_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(report::to_json(back).dump(), j.dump());
  auto bad = nlohmann::json::parse(j.dump());
  bad["first_hodge"]["3"] = 0;
  EXPECT_THROW(report::torsion_from_json(bad), ParseError);
}

TEST(Report, CsvHeaders) {
  const KoszulComplex c(builtin::sl(2));
  const report::TorsionRun run{"sl2", 2, torsion::integral_table(c, {2})};
  EXPECT_EQ(report::render(run, report::Format::Csv).substr(0, 25), "s,t,free_rank,torsion\n0,0");
  report::UcfRun ucf{"sl2", 2, {{3u, torsion::ucf_compare(c, 3, {2})}}};
  EXPECT_EQ(report::render(ucf, report::Format::Csv).rfind("p,s,t,dim_q,dim_fp,free_rank,torsion_here,torsion_next,verdict\n", 0), 0u);
  EXPECT_THROW(report::parse_format("xml"), DomainError);
}

TEST(Cli, E1GridShowsPhaseTransition) {
  const auto r = run({"e1", "-a", "sl2", "-r", "Fp:5", "-N", "5"});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("E_1"), std::string::npos);
}

TEST(Cli, JsonMatchesLibrary) {
  const auto r = run({"pages", "-a", "sl2", "-r", "Fp:5", "-N", "6", "-f", "json"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto parsed = report::spectral_from_json(nlohmann::json::parse(r.out));
  const auto expected = sl2_run();
  ASSERT_EQ(parsed.pages.size(), expected.pages.size());
  for (std::size_t k = 0; k < parsed.pages.size(); ++k) EXPECT_EQ(parsed.pages[k].dims, expected.pages[k].dims);
}

TEST(Cli, OutputIndependentOfThreads) {
  const auto a = run({"pages", "-a", "sl3", "-r", "Fp:3", "-N", "3", "-f", "json", "-j", "1"});
  const auto b = run({"pages", "-a", "sl3", "-r", "Fp:3", "-N", "3", "-f", "json", "-j", "4"});
  ASSERT_EQ(a.code, cli::kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  ::setenv("LIESEQ_THREADS", "3", 1);
  const auto c = run({"pages", "-a", "sl3", "-r", "Fp:3", "-N", "3", "-f", "json"});
  ::unsetenv("LIESEQ_THREADS");
  EXPECT_EQ(a.out, c.out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"e1", "-a", "sl2", "-r", "Fp:4"}).code, cli::kUsage);
  EXPECT_EQ(run({"e1", "-a", "g2"}).code, cli::kValidation);
  EXPECT_EQ(run({"e1", "-a", "/nonexistent/algebra.json"}).code, cli::kIo);
  EXPECT_EQ(run({"verify", "-s", "sl2", "-p", "4"}).code, cli::kUsage);
}

TEST(Cli, RejectsJacobiViolation) {
  const auto dir = temp_dir("jacobi");
  const auto path = dir / "bad.json";
  std::ofstream(path) << R"({"name":"bad","dim":3,"ring":"Q","constants":[[1,2,2,2],[1,3,3,-3],[2,3,1,1]]})";
  const auto r = run({"e1", "-a", path.string()});
  EXPECT_EQ(r.code, cli::kValidation);
  EXPECT_NE(r.err.find("Jacobi identity fails for (e1, e2, e3)"), std::string::npos) << r.err;
}

TEST(Cli, DumpMatrices) {
  const auto dir = temp_dir("dump");
  const auto r = run({"e1", "-a", "sl2", "-r", "Q", "-N", "2", "--dump-matrices", dir.string()});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  std::ifstream in(dir / "d0_s0_t0.txt");
  ASSERT_TRUE(in);
  std::size_t rows = 0, cols = 0, nnz = 0;
  in >> rows >> cols >> nnz;
  EXPECT_EQ(rows, 3u);
  EXPECT_EQ(cols, 1u);
  EXPECT_EQ(nnz, 0u);
  EXPECT_TRUE(std::filesystem::exists(dir / "d1_s1_t1.txt"));
}

TEST(Cli, TorsionAndUcf) {
  const auto t = run({"torsion", "-a", "sl2", "-N", "3", "-f", "csv"});
  ASSERT_EQ(t.code, cli::kOk) << t.err;
  EXPECT_EQ(t.out.rfind("s,t,free_rank,torsion\n", 0), 0u);
  const auto u = run({"ucf", "-a", "sl2", "-N", "4", "--primes", "3,5"});
  EXPECT_EQ(u.code, cli::kOk) << u.err;
}

TEST(Cli, AxiomsGeneratorsVerify) {
  EXPECT_EQ(run({"axioms", "-a", "nonabelian2", "-N", "4"}).code, cli::kOk);
  const auto g = run({"generators", "-p", "5", "-f", "json"});
  ASSERT_EQ(g.code, cli::kOk) << g.err;
  EXPECT_EQ(nlohmann::json::parse(g.out).at("generators").size(), 17u);
  const auto v = run({"verify", "-c", "12"});
  EXPECT_EQ(v.code, cli::kOk) << v.err;
  EXPECT_EQ(v.out.rfind("PASS exact-sequence", 0), 0u) << v.out;
}

TEST(Cli, AlgebraIsCanonical) {
  const auto a = run({"algebra", "-a", "sl2"});
  ASSERT_EQ(a.code, cli::kOk) << a.err;
  const auto dir = temp_dir("algebra");
  std::ofstream(dir / "sl2.json") << a.out;
  const auto b = run({"algebra", "-a", (dir / "sl2.json").string()});
  EXPECT_EQ(a.out, b.out);
}
