#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include <json.hpp>

namespace mgraphon {

/// Monte Carlo value with its sample count and standard error.
struct Estimate {
  double value = 0.0;
  std::size_t n_samples = 0;
  double std_error = 0.0;

  /// Mean of the samples; standard error is the sample standard deviation
  /// over sqrt(N).
  static Estimate from_samples(std::span<const double> samples);

  /// Mean of N indicator draws; standard error sqrt(p(1-p)/N).
  static Estimate from_indicators(std::size_t successes, std::size_t n);

  static Estimate exact(double value) { return {value, 0, 0.0}; }
};

nlohmann::json to_json(const Estimate& e, std::optional<double> truncation_bound = std::nullopt);

}  // namespace mgraphon
