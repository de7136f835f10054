#include "mgraphon/estimate.hpp"

#include <cmath>
#include <stdexcept>

namespace mgraphon {

Estimate Estimate::from_samples(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("Estimate: no samples");
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double sd = samples.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return {mean, samples.size(), sd / std::sqrt(n)};
}

Estimate Estimate::from_indicators(std::size_t successes, std::size_t n) {
  if (n == 0) throw std::invalid_argument("Estimate: no samples");
  const double p = static_cast<double>(successes) / static_cast<double>(n);
  return {p, n, std::sqrt(p * (1.0 - p) / static_cast<double>(n))};
}

nlohmann::json to_json(const Estimate& e, std::optional<double> truncation_bound) {
  nlohmann::json j{{"value", e.value}, {"stderr", e.std_error}, {"n_samples", e.n_samples}};
  j["truncation_bound"] = truncation_bound ? nlohmann::json(*truncation_bound) : nlohmann::json(nullptr);
  return j;
}

}  // namespace mgraphon
