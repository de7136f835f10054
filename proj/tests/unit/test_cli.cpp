#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "mgraphon/graph_io.hpp"
#include "mgraphon/limit.hpp"
#include "mgraphon_cli/commands.hpp"
#include "mgraphon_cli/config.hpp"
#include "mgraphon_cli/csv.hpp"

namespace mgraphon::cli {
namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("mgraphon_cli_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(Config, SectionsListsAndOverrides) {
  Config c = Config::from_string("[a]\nx = 1.5\nlist = 1, 2,3\nflag = true\n[b]\nname = regular\n");
  EXPECT_DOUBLE_EQ(c.get_double("a.x", 0.0), 1.5);
  EXPECT_EQ(c.get_uints("a.list", {}), (std::vector<std::uint64_t>{1, 2, 3}));
  EXPECT_TRUE(c.get_bool("a.flag", false));
  EXPECT_EQ(c.get_string("b.name", ""), "regular");
  EXPECT_EQ(c.get_uint("b.missing", 7), 7u);
  c.set("a.x=2.25");
  EXPECT_DOUBLE_EQ(c.get_double("a.x", 0.0), 2.25);
  c.set("a.list", "");
  EXPECT_TRUE(c.get_doubles("a.list", {1.0}).empty());
}

TEST(Config, RejectsMalformedValues) {
  Config c = Config::from_string("[a]\nx = 1.5z\nn = -3\nb = maybe\n");
  EXPECT_THROW(c.get_double("a.x", 0.0), ConfigError);
  EXPECT_THROW(c.get_uint("a.n", 0), ConfigError);
  EXPECT_THROW(c.get_bool("a.b", false), ConfigError);
  EXPECT_THROW(c.set("novalue"), ConfigError);
  EXPECT_THROW(Config::from_string("[a\nx=1\n"), ConfigError);
}

TEST(Csv, SeventeenDigitsRoundTrip) {
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_double(x)), x);
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(Csv, QuotesAndWidth) {
  std::ostringstream out;
  CsvWriter w(out, {"a", "b"});
  w.cell("x,y").cell(std::uint64_t{3}).end_row();
  EXPECT_EQ(out.str(), "a,b\n\"x,y\",3\n");
  w.cell("only");
  EXPECT_THROW(w.end_row(), std::logic_error);
}

TEST(Verify, EmptyCheckListPassesTrivially) {
  Config c;
  c.set("verify.checks", "");
  const VerifyReport r = verify(c, {});
  EXPECT_TRUE(r.checks.empty());
  EXPECT_TRUE(r.pass());
}

TEST(Verify, ExactGroupsPass) {
  Config c;
  c.set("verify.checks", "growth_formula,degree_formula,nb_law,cm_identity,reconnect_oracle");
  const VerifyReport r = verify(c, {});
  EXPECT_TRUE(r.pass());
  EXPECT_FALSE(r.checks.empty());
}

TEST(Verify, CorruptedFormulaFails) {
  for (const char* formula : {"cm_prob", "growth_graph_prob", "growth_degree_prob", "nb_law"}) {
    Config c;
    c.set("verify.checks", "growth_formula,degree_formula,nb_law,cm_identity");
    c.set("verify.corrupt", formula);
    EXPECT_FALSE(verify(c, {}).pass()) << formula;
  }
  Config c;
  c.set("verify.corrupt", "nonsense");
  EXPECT_THROW(verify(c, {}), ConfigError);
  c.set("verify.corrupt", "");
  c.set("verify.checks", "nonsense");
  EXPECT_THROW(verify(c, {}), ConfigError);
}

TEST(Verify, ExitCodeAndReport) {
  const auto dir = scratch("verify");
  Config c;
  c.set("verify.checks", "cm_sampler");
  RunOptions o;
  o.out_dir = dir;
  o.budget = 5000;
  std::ostringstream log;
  EXPECT_EQ(run_verify(c, o, log), kExitCheckFailed);  // TV noise at 5000 draws exceeds 0.005
  c.set("verify.sampler_tolerance", "1");
  EXPECT_EQ(run_verify(c, o, log), kExitPass);
  const auto j = nlohmann::json::parse(slurp(dir / "verify_report.json"));
  EXPECT_EQ(j["checks"].size(), 3u);
  EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(Verify, SamplerChecksIndependentOfWorkers) {
  Config c;
  c.set("verify.checks", "cm_sampler,growth_sampler,reconnect_chain");
  RunOptions o;
  o.budget = 9000;
  o.workers = 1;
  const std::string one = to_json(verify(c, o), o.seed).dump();
  o.workers = 3;
  EXPECT_EQ(to_json(verify(c, o), o.seed).dump(), one);
}

TEST(Dynamics, RegimeIsEnforced) {
  Config c;
  c.set("dynamics.p2", "0.2");
  std::ostringstream log;
  EXPECT_THROW(run_dynamics(c, {}, log), ConfigError);
  c.set("dynamics.p1", "0");
  c.set("dynamics.p2", "0");
  EXPECT_THROW(run_dynamics(c, {}, log), ConfigError);
}

TEST(Dynamics, UnsafeRegimeRunsAndEmptyTimesGiveHeaderOnly) {
  const auto dir = scratch("dynamics");
  Config c;
  c.set("dynamics.n", "6");
  c.set("dynamics.p2", "0.2");
  c.set("dynamics.unsafe_regime", "true");
  c.set("dynamics.replicates", "3");
  c.set("dynamics.limit_outer", "4");
  c.set("dynamics.limit_inner", "4");
  c.set("dynamics.times", "0,0.01");
  RunOptions o;
  o.out_dir = dir;
  std::ostringstream log;
  EXPECT_EQ(run_dynamics(c, o, log), kExitPass);
  EXPECT_EQ(lines(slurp(dir / "dynamics.csv")).size(), 1u + 2 * 2);
  EXPECT_EQ(lines(slurp(dir / "dynamics_replicates.csv")).size(), 1u + 3 * 2 * 2);

  c.set("dynamics.times", "");
  EXPECT_EQ(run_dynamics(c, o, log), kExitPass);
  const auto rows = lines(slurp(dir / "dynamics.csv"));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].rfind("seed,s,pattern", 0), 0u);
}

TEST(StaticLimit, RegularLimitColumnAndLargePatterns) {
  const auto dir = scratch("static");
  Config c;
  c.set("static_limit.n", "8");
  c.set("static_limit.replicates", "5");
  c.set("static_limit.patterns", "K2_1,empty_9");
  RunOptions o;
  o.out_dir = dir;
  std::ostringstream log;
  EXPECT_EQ(run_static_limit(c, o, log), kExitPass);
  const auto rows = lines(slurp(dir / "static_limit.csv"));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], "seed,model,n,pattern,replicates,empirical,stderr,limit,limit_stderr,gap");
  // Constant weights at c = 0.5: p(1; 0.5) for the pair times p(0; 0.25)^2
  // for the two loop-free endpoints.
  EXPECT_NE(rows[1].find("," + format_double(poisson_pmf(1, 0.5) * poisson_pmf(0, 0.25) * poisson_pmf(0, 0.25)) +
                         ","),
            std::string::npos);
  // k > n: empirical 0 with no spread.
  EXPECT_NE(rows[2].find(",5,0,0,"), std::string::npos);

  c.set("static_limit.model", "triangle");
  EXPECT_THROW(run_static_limit(c, o, log), ConfigError);
}

TEST(Paths, WritesRowsPerReplicateAndTime) {
  const auto dir = scratch("paths");
  Config c;
  c.set("paths.n", "10");
  c.set("paths.replicates", "7");
  c.set("paths.times", "0.5,1");
  RunOptions o;
  o.out_dir = dir;
  std::ostringstream log;
  const int code = run_paths(c, o, log);
  EXPECT_TRUE(code == kExitPass || code == kExitCheckFailed);
  EXPECT_EQ(lines(slurp(dir / "paths.csv")).size(), 1u + 7 * 2);
  EXPECT_EQ(lines(slurp(dir / "paths_summary.csv")).size(), 1u + 2);
  c.set("paths.p1", "0.6");
  c.set("paths.p2", "0.3");
  EXPECT_THROW(run_paths(c, o, log), ConfigError);
}

TEST(Dist, IdenticalZeroSwappedSymmetricParseErrors) {
  const auto dir = scratch("dist");
  {
    std::ofstream(dir / "a.txt") << "3\n1 2\n2 3\n3 3\n";
    std::ofstream(dir / "b.txt") << "3\n1 2\n1 2\n";
    std::ofstream(dir / "bad.txt") << "3\n1 2\n4 1\n";
  }
  auto value = [&](const char* x, const char* y) {
    std::ostringstream out;
    EXPECT_EQ(run_dist(dir / x, dir / y, {}, out), kExitPass);
    return nlohmann::json::parse(out.str());
  };
  EXPECT_EQ(value("a.txt", "a.txt")["value"].get<double>(), 0.0);
  const auto ab = value("a.txt", "b.txt");
  EXPECT_GT(ab["value"].get<double>(), 0.0);
  EXPECT_EQ(ab["value"], value("b.txt", "a.txt")["value"]);
  std::ostringstream out;
  try {
    run_dist(dir / "a.txt", dir / "bad.txt", {}, out);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

}  // namespace
}  // namespace mgraphon::cli
