#include "tbc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tbc {

namespace {

void check_probability(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::invalid_argument("probability must be in (0, 1], got " + std::to_string(p));
  }
}

// Ceiling that ignores representation noise: 100 / (0.1 * 0.25) must give
// 4000, not 4001.
std::uint64_t stable_ceil(double x) {
  const double nearest = std::round(x);
  if (std::fabs(x - nearest) <= 1e-9 * std::max(1.0, std::fabs(x))) {
    return static_cast<std::uint64_t>(nearest);
  }
  return static_cast<std::uint64_t>(std::ceil(x));
}

}  // namespace

void ApproximationParams::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must be in (0, 1), got " + std::to_string(epsilon));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must be in (0, 1), got " + std::to_string(delta));
  }
}

double es_ns_variance_bound(double count, double p) {
  check_probability(p);
  if (count < 0) throw std::invalid_argument("count must be non-negative");
  return (1.0 - p) / p * count * count;
}

double is_variance_bound(double count, std::uint64_t m, std::uint64_t s) {
  if (s == 0) throw std::invalid_argument("s must be at least 1");
  if (m == 0) throw std::invalid_argument("m must be at least 1");
  if (count < 0) throw std::invalid_argument("count must be non-negative");
  return static_cast<double>(m - 1) / static_cast<double>(s) * count * count;
}

double bennett_h(double x) {
  if (x <= -1.0) throw std::invalid_argument("h(x) requires x > -1");
  return (1.0 + x) * std::log1p(x) - x;
}

double min_probability(const ApproximationParams& params) {
  params.validate();
  return 1.0 / (1.0 + params.delta * params.epsilon * params.epsilon);
}

std::uint64_t min_interval_samples(const ApproximationParams& params, std::uint64_t m) {
  params.validate();
  if (m < 2) return 1;
  return stable_ceil(static_cast<double>(m - 1) * std::log(2.0 / params.delta) / bennett_h(params.epsilon));
}

std::uint64_t chebyshev_interval_samples(const ApproximationParams& params, std::uint64_t m) {
  params.validate();
  if (m < 2) return 1;
  return stable_ceil(static_cast<double>(m - 1) / (params.delta * params.epsilon * params.epsilon));
}

}  // namespace tbc
