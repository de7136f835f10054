#include "mgraphon_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "mgraphon/dynamics.hpp"
#include "mgraphon/generators.hpp"
#include "mgraphon/graph_io.hpp"
#include "mgraphon/limit.hpp"
#include "mgraphon/parallel.hpp"
#include "mgraphon/stats.hpp"
#include "mgraphon_cli/csv.hpp"

namespace mgraphon::cli {

namespace {

constexpr std::uint64_t kStaticGraphStream = 10;
constexpr std::uint64_t kStaticLimitStream = 11;
constexpr std::uint64_t kChainStream = 20;
constexpr std::uint64_t kObserveStream = 21;
constexpr std::uint64_t kDynamicsLimitStream = 22;
constexpr std::uint64_t kPathStream = 30;

std::ofstream open_output(const RunOptions& options, const std::string& name) {
  std::filesystem::create_directories(options.out_dir);
  const auto path = options.out_dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

std::vector<Pattern> parse_patterns(const std::vector<std::string>& names) {
  std::vector<Pattern> out;
  for (const auto& name : names) {
    try {
      out.push_back(Pattern::parse(name));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("pattern '" + name + "': " + e.what());
    }
  }
  return out;
}

std::vector<double> sorted_times(const Config& config, const std::string& key, const std::vector<double>& fallback) {
  const auto times = config.get_doubles(key, fallback);
  if (!std::is_sorted(times.begin(), times.end())) throw ConfigError(key + " must be sorted");
  for (double s : times)
    if (!(s >= 0.0)) throw ConfigError(key + " must be non-negative");
  return times;
}

// Reference law of Y(s) = a + |W(s) + rho0 - a| with Var W(s) = rate s.
struct FoldedReference {
  double a, rho0, rate;

  double sigma(double s) const { return std::sqrt(rate * s); }
  double mean(double s) const {
    return s > 0.0 ? a + stats::folded_normal_mean(rho0 - a, sigma(s)) : rho0;
  }
  double cdf(double x, double s) const {
    if (s > 0.0) return stats::folded_normal_cdf(x, rho0 - a, sigma(s), a);
    return x >= rho0 ? 1.0 : 0.0;
  }
};

ReconnectParams chain_params(const Config& config, const std::string& section, std::uint64_t seed) {
  ReconnectParams p;
  p.n = config.get_uint(section + ".n", 40);
  p.theta = config.get_double(section + ".theta", 1.0);
  p.p1 = config.get_double(section + ".p1", 0.3);
  p.p2 = config.get_double(section + ".p2", 0.3);
  p.a = config.get_double(section + ".a", 0.2);
  p.rho0 = config.get_double(section + ".rho0", 0.5);
  p.seed = seed;
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(section + ": " + e.what());
  }
  return p;
}

std::uint64_t budget_or(const RunOptions& options, const Config& config, const std::string& key,
                        std::uint64_t fallback) {
  return options.budget ? *options.budget : config.get_uint(key, fallback);
}

}  // namespace

int run_verify(const Config& config, const RunOptions& options, std::ostream& log) {
  const VerifyReport report = verify(config, options);
  for (const CheckResult& c : report.checks)
    log << (c.pass ? "PASS " : "FAIL ") << c.group << ": " << c.name << "  observed=" << format_double(c.observed)
        << " tolerance=" << format_double(c.tolerance) << '\n';
  open_output(options, "verify_report.json") << to_json(report, options.seed).dump(2) << '\n';
  log << (report.pass() ? "verify: all " : "verify: failures among ") << report.checks.size() << " checks\n";
  return report.pass() ? kExitPass : kExitCheckFailed;
}

int run_static_limit(const Config& config, const RunOptions& options, std::ostream& log) {
  const std::string model = config.get_string("static_limit.model", "regular");
  if (model != "regular" && model != "growth") throw ConfigError("static_limit.model: invalid model '" + model + "'");
  const double c = config.get_double("static_limit.c", 0.5);
  const double theta = config.get_double("static_limit.theta", 1.0);
  const double edge_density = config.get_double("static_limit.edge_density", 0.4);
  auto ns = config.get_uints("static_limit.n", {100, 200, 400});
  std::sort(ns.begin(), ns.end());
  const auto patterns = parse_patterns(config.get_list("static_limit.patterns", {"K2_0", "K2_1", "K2_2", "L_1"}));
  const std::size_t replicates = config.get_uint("static_limit.replicates", 1000);
  const std::size_t n_samples = budget_or(options, config, "static_limit.n_samples", 1000);
  const std::uint64_t exact_budget = config.get_uint("static_limit.exact_budget", 1'000'000);
  const std::size_t limit_samples = config.get_uint("static_limit.limit_samples", 1'000'000);
  if (model == "regular" && !(c > 0.0)) throw ConfigError("static_limit.c must be positive");
  if (model == "growth" && !(theta > 0.0 && edge_density > 0.0))
    throw ConfigError("static_limit.theta and edge_density must be positive");
  if (replicates == 0 || n_samples == 0) throw ConfigError("static_limit: replicates and n_samples must be positive");

  // Limit side: constant weights at level c, or Gamma weights at level
  // Y = 2 edge_density.
  std::vector<Estimate> limit;
  for (std::size_t f = 0; f < patterns.size(); ++f) {
    Rng rng = derive_rng(options.seed, kStaticLimitStream, f);
    limit.push_back(model == "regular"
                        ? psi_expectation(patterns[f], c, MixingLaw::constant(1.0), limit_samples, rng)
                        : psi_expectation(patterns[f], 2.0 * edge_density, MixingLaw::gamma(theta), limit_samples, rng));
  }

  auto summary = open_output(options, "static_limit.csv");
  auto detail = open_output(options, "static_limit_replicates.csv");
  CsvWriter rows(summary, {"seed", "model", "n", "pattern", "replicates", "empirical", "stderr", "limit",
                           "limit_stderr", "gap"});
  CsvWriter reps(detail, {"seed", "model", "n", "replicate", "pattern", "value"});
  for (std::size_t ni = 0; ni < ns.size(); ++ni) {
    const std::size_t n = ns[ni];
    std::optional<DegreeSequence> regular;
    if (model == "regular") {
      regular = DegreeSequence{std::vector<std::uint64_t>(n, static_cast<std::uint64_t>(std::floor(c * n)))};
      if (regular->total() % 2) throw ConfigError("static_limit: odd degree total at n=" + std::to_string(n));
    }
    const auto m = static_cast<std::uint64_t>(std::floor(edge_density * static_cast<double>(n * n)));
    std::vector<std::vector<double>> values(replicates, std::vector<double>(patterns.size(), 0.0));
    parallel_for(replicates, options.workers, [&](std::size_t r) {
      Rng rng = derive_rng(options.seed, kStaticGraphStream + ni, r);
      const Multigraph g = regular ? sample_cm(*regular, rng) : grow(n, theta, m, rng);
      for (std::size_t f = 0; f < patterns.size(); ++f) {
        // k > n: no injections, density 0 by convention.
        if (patterns[f].num_vertices() > n) continue;
        values[r][f] = density_estimate(patterns[f], g, DensityKind::ind, n_samples, exact_budget, rng).value;
      }
    });
    for (std::size_t r = 0; r < replicates; ++r)
      for (std::size_t f = 0; f < patterns.size(); ++f)
        reps.cell(options.seed).cell(model).cell(std::uint64_t{n}).cell(std::uint64_t{r}).cell(patterns[f].name())
            .cell(values[r][f]).end_row();
    for (std::size_t f = 0; f < patterns.size(); ++f) {
      std::vector<double> column(replicates);
      for (std::size_t r = 0; r < replicates; ++r) column[r] = values[r][f];
      const Estimate e = Estimate::from_samples(column);
      rows.cell(options.seed).cell(model).cell(std::uint64_t{n}).cell(patterns[f].name())
          .cell(std::uint64_t{replicates}).cell(e.value).cell(e.std_error).cell(limit[f].value)
          .cell(limit[f].std_error).cell(std::abs(e.value - limit[f].value)).end_row();
    }
    log << "static-limit: n=" << n << " done (" << replicates << " replicates)\n";
  }
  return kExitPass;
}

int run_dynamics(const Config& config, const RunOptions& options, std::ostream& log) {
  const ReconnectParams params = chain_params(config, "dynamics", options.seed);
  const bool unsafe = config.get_bool("dynamics.unsafe_regime", false);
  if (!unsafe && !(params.p1 == params.p2 && params.p1 > 0.0))
    throw ConfigError("dynamics: regime violation, p1 = p2 > 0 is required (override with --unsafe-regime)");
  const auto times = sorted_times(config, "dynamics.times", {0.25, 1.0});
  const auto patterns = parse_patterns(config.get_list("dynamics.patterns", {"K2_0", "K2_1"}));
  const std::size_t replicates = config.get_uint("dynamics.replicates", 200);
  const std::size_t limit_outer = config.get_uint("dynamics.limit_outer", 2000);
  const std::size_t limit_inner = config.get_uint("dynamics.limit_inner", 1000);
  LimitParams limit_params;
  limit_params.theta = params.theta;
  limit_params.a = params.a;
  limit_params.rho0 = params.rho0;
  limit_params.variance_rate = config.get_double("dynamics.variance_rate", 4.0);
  if (replicates < 2) throw ConfigError("dynamics.replicates must be at least 2");
  if (limit_outer < 2 || limit_inner == 0) throw ConfigError("dynamics: limit_outer >= 2 and limit_inner >= 1");
  ObserveOptions observe;
  observe.patterns = patterns;
  observe.n_samples = budget_or(options, config, "dynamics.n_samples", 1000);
  observe.exact_budget = config.get_uint("dynamics.exact_budget", 1'000'000);

  std::vector<Trajectory> runs(replicates);
  if (!times.empty()) {
    parallel_for(replicates, options.workers, [&](std::size_t r) {
      Rng chain_rng = derive_rng(options.seed, kChainStream, r);
      Rng observe_rng = derive_rng(options.seed, kObserveStream, r);
      runs[r] = run_and_observe(params, times, observe, chain_rng, observe_rng);
    });
  }

  // Limit side, one task per (time, pattern).
  const std::size_t cells = times.size() * patterns.size();
  std::vector<NestedEstimate> limit(cells);
  parallel_for(cells, options.workers, [&](std::size_t i) {
    Rng rng = derive_rng(options.seed, kDynamicsLimitStream, i);
    limit[i] = expected_ind_density_at_time(patterns[i % patterns.size()], times[i / patterns.size()],
                                            limit_params, limit_outer, limit_inner, rng);
  });

  auto detail = open_output(options, "dynamics_replicates.csv");
  CsvWriter reps(detail, {"seed", "replicate", "s", "m", "L", "Y", "pattern", "ind", "ind_stderr"});
  for (std::size_t r = 0; r < runs.size(); ++r)
    for (const Observation& obs : runs[r].records)
      for (std::size_t f = 0; f < patterns.size(); ++f)
        reps.cell(options.seed).cell(std::uint64_t{r}).cell(obs.s).cell(obs.m).cell(obs.L).cell(obs.Y)
            .cell(patterns[f].name()).cell(obs.ind[f].value).cell(obs.ind[f].std_error).end_row();

  const FoldedReference ref{params.a, params.rho0, limit_params.variance_rate};
  auto summary = open_output(options, "dynamics.csv");
  CsvWriter rows(summary, {"seed", "s", "pattern", "replicates", "empirical", "stderr", "limit", "limit_stderr",
                           "gap", "Y_mean", "Y_stderr", "Y_limit_mean", "Y_ks"});
  for (std::size_t q = 0; q < times.size(); ++q) {
    std::vector<double> ys(replicates);
    for (std::size_t r = 0; r < replicates; ++r) ys[r] = runs[r].records[q].Y;
    const Estimate y = Estimate::from_samples(ys);
    const double ks = stats::ks_statistic(ys, [&](double x) { return ref.cdf(x, times[q]); });
    for (std::size_t f = 0; f < patterns.size(); ++f) {
      std::vector<double> column(replicates);
      for (std::size_t r = 0; r < replicates; ++r) column[r] = runs[r].records[q].ind[f].value;
      const Estimate e = Estimate::from_samples(column);
      const Estimate& l = limit[q * patterns.size() + f].estimate;
      rows.cell(options.seed).cell(times[q]).cell(patterns[f].name()).cell(std::uint64_t{replicates}).cell(e.value)
          .cell(e.std_error).cell(l.value).cell(l.std_error).cell(std::abs(e.value - l.value)).cell(y.value)
          .cell(y.std_error).cell(ref.mean(times[q])).cell(ks).end_row();
    }
    log << "dynamics: s=" << format_double(times[q]) << " Y_mean=" << format_double(y.value) << " KS=" << format_double(ks)
        << '\n';
  }
  return kExitPass;
}

int run_paths(const Config& config, const RunOptions& options, std::ostream& log) {
  const ReconnectParams params = chain_params(config, "paths", options.seed);
  const auto times = sorted_times(config, "paths.times", {1.0});
  const std::size_t replicates = config.get_uint("paths.replicates", 2000);
  const std::string mode = config.get_string("paths.mode", "walk");
  const double rate = config.get_double("paths.variance_rate", 4.0);
  const double alpha = config.get_double("paths.alpha", 0.01);
  if (mode != "walk" && mode != "chain") throw ConfigError("paths.mode must be walk or chain");
  if (replicates < 2) throw ConfigError("paths.replicates must be at least 2");
  if (!(params.p1 > 0.0)) throw ConfigError("paths.p1 must be positive");
  if (mode == "walk" && params.p1 > 0.5) throw ConfigError("paths: walk mode needs p1 <= 1/2");

  std::vector<std::uint64_t> steps;
  for (double s : times) steps.push_back(step_index(params.n, params.p1, s));
  const double n2 = static_cast<double>(params.n) * static_cast<double>(params.n);
  std::vector<std::vector<double>> ys(replicates);
  parallel_for(replicates, options.workers, [&](std::size_t r) {
    Rng rng = derive_rng(options.seed, kPathStream, r);
    if (mode == "walk") {
      ys[r] = reflected_walk_path(params, steps, rng);
    } else {
      for (std::uint64_t L : simulate_half_edge_chain(params, steps, rng)) ys[r].push_back(static_cast<double>(L) / n2);
    }
  });

  auto detail = open_output(options, "paths.csv");
  CsvWriter reps(detail, {"seed", "replicate", "s", "m", "Y"});
  for (std::size_t r = 0; r < replicates; ++r)
    for (std::size_t q = 0; q < times.size(); ++q)
      reps.cell(options.seed).cell(std::uint64_t{r}).cell(times[q]).cell(steps[q]).cell(ys[r][q]).end_row();

  const FoldedReference ref{params.a, params.rho0, rate};
  const double critical = stats::ks_critical_value(replicates, alpha);
  auto summary = open_output(options, "paths_summary.csv");
  CsvWriter rows(summary, {"seed", "s", "replicates", "Y_mean", "Y_stderr", "limit_mean", "ks", "ks_critical",
                           "ks_pass"});
  bool pass = true;
  for (std::size_t q = 0; q < times.size(); ++q) {
    std::vector<double> column(replicates);
    for (std::size_t r = 0; r < replicates; ++r) column[r] = ys[r][q];
    const Estimate y = Estimate::from_samples(column);
    const double ks = stats::ks_statistic(column, [&](double x) { return ref.cdf(x, times[q]); });
    pass = pass && ks < critical;
    rows.cell(options.seed).cell(times[q]).cell(std::uint64_t{replicates}).cell(y.value).cell(y.std_error)
        .cell(ref.mean(times[q])).cell(ks).cell(critical).cell(std::string(ks < critical ? "true" : "false"))
        .end_row();
    log << "paths: s=" << format_double(times[q]) << " KS=" << format_double(ks)
        << " critical=" << format_double(critical) << (ks < critical ? " PASS" : " FAIL") << '\n';
  }
  return pass ? kExitPass : kExitCheckFailed;
}

int run_dist(const std::filesystem::path& a, const std::filesystem::path& b, const DistanceOptions& distance,
             std::ostream& out) {
  const Multigraph g1 = read_graph_file(a);
  const Multigraph g2 = read_graph_file(b);
  const DistanceResult d = ms_distance(g1, g2, distance);
  const nlohmann::json j{{"value", d.value},
                         {"truncation_bound", d.truncation_bound},
                         {"subgraph_part", d.subgraph_part},
                         {"edge_part", d.edge_part},
                         {"loop_part", d.loop_part}};
  out << j.dump(2) << '\n';
  return kExitPass;
}

}  // namespace mgraphon::cli
