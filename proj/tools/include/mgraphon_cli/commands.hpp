#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mgraphon/density.hpp"
#include "mgraphon_cli/config.hpp"

namespace mgraphon::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Flags shared by every subcommand.
struct RunOptions {
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::filesystem::path out_dir = ".";
  /// Overrides the command's main Monte Carlo size (draws for verify,
  /// injection samples per density elsewhere).
  std::optional<std::uint64_t> budget;
};

struct CheckResult {
  std::string name;
  std::string group;
  double tolerance = 0.0;
  double observed = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool pass() const;
};

/// Check groups run by `verify`, in this order by default.
const std::vector<std::string>& verify_groups();

/// Runs the groups listed in `verify.checks`. `verify.corrupt` names a
/// formula (cm_prob, growth_graph_prob, growth_degree_prob, nb_law) whose
/// value is doubled before comparison, to exercise the failure path.
VerifyReport verify(const Config& config, const RunOptions& options);
nlohmann::json to_json(const VerifyReport& report, std::uint64_t seed);

/// Subcommands. Each writes its files to options.out_dir and a short summary
/// to `log`, and returns an exit code. Configuration errors throw ConfigError.
int run_verify(const Config& config, const RunOptions& options, std::ostream& log);
int run_static_limit(const Config& config, const RunOptions& options, std::ostream& log);
int run_dynamics(const Config& config, const RunOptions& options, std::ostream& log);
int run_paths(const Config& config, const RunOptions& options, std::ostream& log);
/// Prints d_ms(G1, G2) with its truncation bound as JSON on `out`.
int run_dist(const std::filesystem::path& a, const std::filesystem::path& b, const DistanceOptions& distance,
             std::ostream& out);

}  // namespace mgraphon::cli
