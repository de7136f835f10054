#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mgraphon/graph_io.hpp"
#include "mgraphon_cli/commands.hpp"

namespace cli = mgraphon::cli;

int main(int argc, char** argv) {
  CLI::App app{"mgraphon: multigraph limit experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::string out_dir = ".";
  std::uint64_t budget = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "INI config file")->check(CLI::ExistingFile);
    sub->add_option("--set", overrides, "Override a config value, section.key=value");
    sub->add_option("--seed", seed, "Master seed");
    sub->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out-dir", out_dir, "Directory for result files");
    sub->add_option("--budget", budget, "Monte Carlo size override")->check(CLI::PositiveNumber);
  };

  auto* verify = app.add_subcommand("verify", "Exact identities and sampler checks");
  add_common(verify);
  std::string corrupt;
  verify->add_option("--corrupt-formula", corrupt, "Test hook: double the named formula");

  auto* static_limit = app.add_subcommand("static-limit", "Densities of static models against their limit");
  add_common(static_limit);

  auto* dynamics = app.add_subcommand("dynamics", "Reconnection chain densities against the limit process");
  add_common(dynamics);
  bool unsafe = false;
  dynamics->add_flag("--unsafe-regime", unsafe, "Allow p1 != p2 (smoke tests only)");

  auto* paths = app.add_subcommand("paths", "Half-edge density paths without graph structure");
  add_common(paths);

  auto* dist = app.add_subcommand("dist", "Truncated multisubgraph distance between two graph files");
  std::string file_a, file_b;
  mgraphon::DistanceOptions distance;
  dist->add_option("first", file_a, "Graph file")->required();
  dist->add_option("second", file_b, "Graph file")->required();
  dist->add_option("--max-patterns", distance.max_patterns, "Patterns in the truncated sum");
  dist->add_option("--max-vertices", distance.max_pattern_vertices, "Largest pattern vertex count");
  dist->add_option("--max-multiplicity", distance.max_multiplicity, "R_max for the induced sums (-1: automatic)");
  dist->add_option("--budget", distance.budget, "Exact counting budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitPass : cli::kExitUsage;
  }

  try {
    if (dist->parsed()) return cli::run_dist(file_a, file_b, distance, std::cout);

    cli::Config config = config_path.empty() ? cli::Config() : cli::Config::from_file(config_path);
    for (const auto& o : overrides) config.set(o);
    if (!corrupt.empty()) config.set("verify.corrupt", corrupt);
    if (unsafe) config.set("dynamics.unsafe_regime", "true");

    cli::RunOptions options;
    options.seed = seed;
    options.workers = workers;
    options.out_dir = out_dir;
    if (budget > 0) options.budget = budget;

    if (verify->parsed()) return cli::run_verify(config, options, std::cout);
    if (static_limit->parsed()) return cli::run_static_limit(config, options, std::cout);
    if (dynamics->parsed()) return cli::run_dynamics(config, options, std::cout);
    return cli::run_paths(config, options, std::cout);
  } catch (const cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitUsage;
  } catch (const mgraphon::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitUsage;
  }
}
