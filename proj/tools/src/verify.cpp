#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "mgraphon/dynamics.hpp"
#include "mgraphon/generators.hpp"
#include "mgraphon/oracle.hpp"
#include "mgraphon/parallel.hpp"
#include "mgraphon_cli/commands.hpp"

namespace mgraphon::cli {

namespace {

using oracle::ExactLaw;
using oracle::GraphKey;

constexpr std::size_t kBlock = 4096;

// Stream ids keep every sampler check on its own substreams.
constexpr std::uint64_t kCmStream = 1000;
constexpr std::uint64_t kGrowthStream = 2000;
constexpr std::uint64_t kReconnectStream = 3000;

struct VerifySettings {
  std::size_t max_n = 3;
  std::uint64_t max_m = 3;
  std::size_t cm_extra_n = 4;
  std::uint64_t cm_extra_total = 8;
  std::vector<Rational> thetas{Rational(1, 2), Rational(1), Rational(2)};
  std::vector<std::vector<std::uint64_t>> cm_sampler_degrees{{2, 2}, {3, 1, 2}, {2, 2, 2}};
  std::uint64_t draws = 1'000'000;
  double sampler_tolerance = 0.005;
  std::uint64_t reconnect_steps = 6;
  double reconnect_tolerance = 0.02;
  double escape_tolerance = 1e-3;
  std::string corrupt;
  std::uint64_t seed = 1;
  std::size_t workers = 1;

  Rational scale(const std::string& formula) const { return corrupt == formula ? Rational(2) : Rational(1); }
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

std::string theta_name(const Rational& theta) {
  return boost::multiprecision::numerator(theta).str() +
         (boost::multiprecision::denominator(theta) == 1 ? "" : "/" + boost::multiprecision::denominator(theta).str());
}

std::string degrees_name(const std::vector<std::uint64_t>& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

// All d in N^n with sum d = total, in lexicographic order.
void compositions(std::size_t n, std::uint64_t total, std::vector<std::uint64_t>& prefix,
                  std::vector<std::vector<std::uint64_t>>& out) {
  if (prefix.size() + 1 == n) {
    prefix.push_back(total);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (std::uint64_t v = 0; v <= total; ++v) {
    prefix.push_back(v);
    compositions(n, total - v, prefix, out);
    prefix.pop_back();
  }
}

std::vector<std::vector<std::uint64_t>> compositions(std::size_t n, std::uint64_t total) {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> prefix;
  compositions(n, total, prefix, out);
  return out;
}

// Degree sequences checked against the CM formula: n <= max_n with
// l <= 2 max_m, plus n = cm_extra_n with l <= cm_extra_total.
std::vector<std::vector<std::uint64_t>> cm_instances(const VerifySettings& s) {
  std::vector<std::vector<std::uint64_t>> out;
  for (std::size_t n = 1; n <= s.max_n; ++n)
    for (std::uint64_t l = 2; l <= 2 * s.max_m; l += 2)
      for (auto& d : compositions(n, l)) out.push_back(std::move(d));
  if (s.cm_extra_n > s.max_n)
    for (std::uint64_t l = 2; l <= s.cm_extra_total; l += 2)
      for (auto& d : compositions(s.cm_extra_n, l)) out.push_back(std::move(d));
  return out;
}

CheckResult exact_check(const std::string& group, const std::string& name, std::size_t mismatches,
                        std::size_t compared) {
  CheckResult r;
  r.group = group;
  r.name = name;
  r.tolerance = 0.0;
  r.observed = static_cast<double>(mismatches);
  r.pass = mismatches == 0;
  r.detail = std::to_string(mismatches) + " mismatches in " + std::to_string(compared) + " exact comparisons";
  return r;
}

Rational law_at(const ExactLaw& law, const GraphKey& key) {
  const auto it = law.find(key);
  return it == law.end() ? Rational(0) : it->second;
}

void check_cm_formula(const VerifySettings& s, std::vector<CheckResult>& out) {
  std::size_t bad = 0, compared = 0;
  for (const auto& d : cm_instances(s)) {
    const ExactLaw law = oracle::exact_cm_law(d);
    const auto graphs = oracle::enumerate_graphs_by_degrees(d);
    Rational sum(0);
    for (const Multigraph& g : graphs) {
      const Rational p = cm_prob(g, DegreeSequence{d}) * s.scale("cm_prob");
      sum += p;
      bad += p != law_at(law, g.canonical_key());
      ++compared;
    }
    bad += law.size() != graphs.size();
    bad += sum != 1;
    bad += oracle::total_mass(law) != 1;
    compared += 3;
  }
  out.push_back(exact_check("cm_formula", "cm_prob vs matching enumeration", bad, compared));
}

template <class Fn>
void for_growth_instances(const VerifySettings& s, Fn&& fn) {
  for (std::size_t n = 1; n <= s.max_n; ++n)
    for (std::uint64_t m = 1; m <= s.max_m; ++m)
      for (const Rational& theta : s.thetas) fn(n, m, theta);
}

void check_growth_formula(const VerifySettings& s, std::vector<CheckResult>& out) {
  std::size_t bad = 0, compared = 0;
  for_growth_instances(s, [&](std::size_t n, std::uint64_t m, const Rational& theta) {
    const ExactLaw law = oracle::exact_growth_law(n, m, theta);
    const auto graphs = oracle::enumerate_graphs_by_edges(n, m);
    Rational sum(0);
    for (const Multigraph& g : graphs) {
      const Rational p = growth_graph_prob(g, theta) * s.scale("growth_graph_prob");
      sum += p;
      bad += p != law_at(law, g.canonical_key());
      ++compared;
    }
    bad += (sum != 1) + (oracle::total_mass(law) != 1);
    compared += 2;
  });
  out.push_back(exact_check("growth_formula", "growth_graph_prob vs forward DP", bad, compared));
}

void check_degree_formula(const VerifySettings& s, std::vector<CheckResult>& out) {
  std::size_t bad = 0, compared = 0;
  for_growth_instances(s, [&](std::size_t n, std::uint64_t m, const Rational& theta) {
    std::map<std::vector<std::uint64_t>, Rational> marginal;
    for (const auto& [key, p] : oracle::exact_growth_law(n, m, theta)) {
      const Multigraph g = Multigraph::from_canonical_key(key);
      marginal[DegreeSequence::of(g).d] += p;
    }
    Rational sum(0);
    for (const auto& d : compositions(n, 2 * m)) {
      const Rational p = growth_degree_prob(DegreeSequence{d}, theta) * s.scale("growth_degree_prob");
      sum += p;
      const auto it = marginal.find(d);
      bad += p != (it == marginal.end() ? Rational(0) : it->second);
      ++compared;
    }
    bad += sum != 1;
    ++compared;
  });
  out.push_back(exact_check("degree_formula", "growth_degree_prob vs DP degree marginal", bad, compared));
}

void check_nb_law(const VerifySettings& s, std::vector<CheckResult>& out) {
  std::size_t bad = 0, compared = 0;
  for_growth_instances(s, [&](std::size_t n, std::uint64_t m, const Rational& theta) {
    const auto law = nb_conditional_degree_law(n, m, theta);
    Rational sum(0);
    for (const auto& d : compositions(n, 2 * m)) {
      const auto it = law.find(d);
      const Rational p = (it == law.end() ? Rational(0) : it->second) * s.scale("nb_law");
      sum += p;
      bad += p != growth_degree_prob(DegreeSequence{d}, theta);
      ++compared;
    }
    bad += sum != 1;
    ++compared;
  });
  out.push_back(exact_check("nb_law", "conditioned NB law vs growth_degree_prob", bad, compared));
}

void check_cm_identity(const VerifySettings& s, std::vector<CheckResult>& out) {
  std::size_t bad = 0, compared = 0;
  for_growth_instances(s, [&](std::size_t n, std::uint64_t m, const Rational& theta) {
    for (const Multigraph& g : oracle::enumerate_graphs_by_edges(n, m)) {
      const DegreeSequence d = DegreeSequence::of(g);
      const Rational lhs = growth_graph_prob(g, theta) * s.scale("growth_graph_prob") /
                           (growth_degree_prob(d, theta) * s.scale("growth_degree_prob"));
      bad += lhs != cm_prob(g, d) * s.scale("cm_prob");
      ++compared;
    }
  });
  out.push_back(exact_check("cm_identity", "growth graph law / degree law = CM law", bad, compared));
}

// Empirical law of `draws` samples in blocks of kBlock; block b draws from
// stream (seed, stream, b), so counts do not depend on the worker count.
template <class Draw>
std::map<GraphKey, std::size_t> sample_counts(const VerifySettings& s, std::uint64_t stream, Draw&& draw) {
  const std::size_t blocks = (s.draws + kBlock - 1) / kBlock;
  std::vector<std::map<GraphKey, std::size_t>> parts(blocks);
  parallel_for(blocks, s.workers, [&](std::size_t b) {
    Rng rng = derive_rng(s.seed, stream, b);
    const std::size_t count = std::min<std::size_t>(kBlock, s.draws - b * kBlock);
    for (std::size_t i = 0; i < count; ++i) ++parts[b][draw(rng).canonical_key()];
  });
  std::map<GraphKey, std::size_t> counts;
  for (const auto& part : parts)
    for (const auto& [key, c] : part) counts[key] += c;
  return counts;
}

CheckResult tv_check(const std::string& group, const std::string& name, double tv, double tolerance,
                     std::uint64_t draws) {
  CheckResult r;
  r.group = group;
  r.name = name;
  r.tolerance = tolerance;
  r.observed = tv;
  r.pass = tv < tolerance;
  r.detail = "TV over " + std::to_string(draws) + " draws";
  return r;
}

void check_cm_sampler(const VerifySettings& s, std::vector<CheckResult>& out) {
  for (std::size_t i = 0; i < s.cm_sampler_degrees.size(); ++i) {
    const DegreeSequence d{s.cm_sampler_degrees[i]};
    const auto counts = sample_counts(s, kCmStream + i, [&](Rng& rng) { return sample_cm(d, rng); });
    const double tv = oracle::tv_distance(counts, oracle::exact_cm_law(d.d));
    out.push_back(tv_check("cm_sampler", "sample_cm d=" + degrees_name(d.d), tv, s.sampler_tolerance, s.draws));
  }
}

void check_growth_sampler(const VerifySettings& s, std::vector<CheckResult>& out) {
  std::uint64_t index = 0;
  for_growth_instances(s, [&](std::size_t n, std::uint64_t m, const Rational& theta) {
    const double t = theta.convert_to<double>();
    const auto counts = sample_counts(s, kGrowthStream + index++, [&](Rng& rng) { return grow(n, t, m, rng); });
    const double tv = oracle::tv_distance(counts, oracle::exact_growth_law(n, m, theta));
    out.push_back(tv_check("growth_sampler",
                           "grow n=" + std::to_string(n) + " m=" + std::to_string(m) + " theta=" + theta_name(theta),
                           tv, s.sampler_tolerance, s.draws));
  });
}

// Reconnection chain on two vertices with p1 = p2 = 1/2 and a = rho0 = 1/2.
oracle::ReconnectOracleParams reconnect_oracle_params() { return {}; }

ReconnectParams reconnect_params(const VerifySettings& s, std::uint64_t m) {
  const auto q = reconnect_oracle_params();
  ReconnectParams p;
  p.n = q.n;
  p.theta = q.theta.convert_to<double>();
  p.p1 = q.p1.convert_to<double>();
  p.p2 = q.p2.convert_to<double>();
  p.a = q.a.convert_to<double>();
  p.rho0 = q.rho0.convert_to<double>();
  p.seed = derive_rng(s.seed, kReconnectStream + m)();
  return p;
}

void check_reconnect_oracle(const VerifySettings& s, std::vector<CheckResult>& out) {
  const auto q = reconnect_oracle_params();
  const std::uint64_t L0 = reconnect_params(s, 0).initial_half_edges();
  for (std::uint64_t m = 1; m <= s.reconnect_steps; ++m) {
    const oracle::ReconnectLaw r = oracle::exact_reconnect_law(q, m, L0 + 2 * m);
    std::size_t bad = 0, compared = 0;
    for (const auto& [L, mass] : oracle::half_edge_marginal(r.law)) {
      bad += oracle::conditional_slice(r.law, L) != oracle::exact_growth_law(q.n, L / 2, q.theta);
      ++compared;
    }
    CheckResult slices = exact_check("reconnect_oracle", "slices of exact chain law m=" + std::to_string(m), bad,
                                     compared);
    out.push_back(slices);
    const double escaped = r.escaped.convert_to<double>();
    CheckResult esc;
    esc.group = "reconnect_oracle";
    esc.name = "escaped mass m=" + std::to_string(m);
    esc.tolerance = s.escape_tolerance;
    esc.observed = escaped;
    esc.pass = escaped < s.escape_tolerance;
    esc.detail = "mass above L_cap = " + std::to_string(L0 + 2 * m);
    out.push_back(esc);
  }
}

void check_reconnect_chain(const VerifySettings& s, std::vector<CheckResult>& out) {
  for (std::uint64_t m = 1; m <= s.reconnect_steps; ++m) {
    const ConditionalCheckReport report = conditional_cm_check(reconnect_params(s, m), m, s.draws, s.workers);
    std::string detail;
    for (const SliceReport& slice : report.slices)
      detail += (detail.empty() ? "" : "; ") + fmt("L=%.0f draws=%.0f tv=%.6g", static_cast<double>(slice.L),
                                                   static_cast<double>(slice.draws), slice.tv);
    CheckResult r = tv_check("reconnect_chain", "chain slices vs growth law m=" + std::to_string(m), report.max_tv,
                             s.reconnect_tolerance, s.draws);
    r.detail = detail;
    out.push_back(r);
  }
}

}  // namespace

bool VerifyReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const std::vector<std::string>& verify_groups() {
  static const std::vector<std::string> groups{"cm_formula",      "growth_formula", "degree_formula",
                                               "nb_law",          "cm_identity",    "cm_sampler",
                                               "growth_sampler",  "reconnect_oracle", "reconnect_chain"};
  return groups;
}

VerifyReport verify(const Config& config, const RunOptions& options) {
  VerifySettings s;
  s.seed = options.seed;
  s.workers = options.workers;
  s.draws = options.budget ? *options.budget : config.get_uint("verify.draws", s.draws);
  s.sampler_tolerance = config.get_double("verify.sampler_tolerance", s.sampler_tolerance);
  s.reconnect_steps = config.get_uint("verify.reconnect_steps", s.reconnect_steps);
  s.reconnect_tolerance = config.get_double("verify.reconnect_tolerance", s.reconnect_tolerance);
  s.escape_tolerance = config.get_double("verify.escape_tolerance", s.escape_tolerance);
  s.corrupt = config.get_string("verify.corrupt", "");
  if (s.draws == 0) throw ConfigError("verify.draws must be positive");
  static const std::set<std::string> formulas{"", "cm_prob", "growth_graph_prob", "growth_degree_prob", "nb_law"};
  if (!formulas.count(s.corrupt)) throw ConfigError("verify.corrupt: unknown formula '" + s.corrupt + "'");

  const auto groups = config.get_list("verify.checks", verify_groups());
  VerifyReport report;
  for (const std::string& g : groups) {
    if (g == "cm_formula") check_cm_formula(s, report.checks);
    else if (g == "growth_formula") check_growth_formula(s, report.checks);
    else if (g == "degree_formula") check_degree_formula(s, report.checks);
    else if (g == "nb_law") check_nb_law(s, report.checks);
    else if (g == "cm_identity") check_cm_identity(s, report.checks);
    else if (g == "cm_sampler") check_cm_sampler(s, report.checks);
    else if (g == "growth_sampler") check_growth_sampler(s, report.checks);
    else if (g == "reconnect_oracle") check_reconnect_oracle(s, report.checks);
    else if (g == "reconnect_chain") check_reconnect_chain(s, report.checks);
    else throw ConfigError("verify.checks: unknown check '" + g + "'");
  }
  return report;
}

nlohmann::json to_json(const VerifyReport& report, std::uint64_t seed) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& c : report.checks)
    checks.push_back({{"group", c.group},
                      {"name", c.name},
                      {"tolerance", c.tolerance},
                      {"observed", c.observed},
                      {"pass", c.pass},
                      {"detail", c.detail}});
  return {{"seed", seed}, {"pass", report.pass()}, {"checks", checks}};
}

}  // namespace mgraphon::cli
