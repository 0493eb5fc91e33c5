#pragma once

#include <cstdint>

namespace tbc {

// Target relative error epsilon and failure probability delta, both in (0, 1).
struct ApproximationParams {
  double epsilon;
  double delta;

  // Throws std::invalid_argument outside the open unit interval.
  void validate() const;
};

// ((1 - p) / p) * C^2, the ES/NS variance bound.
double es_ns_variance_bound(double count, double p);

// ((m - 1) / s) * C^2, the IS variance bound.
double is_variance_bound(double count, std::uint64_t m, std::uint64_t s);

// h(x) = (1 + x) ln(1 + x) - x, evaluated without cancellation for small x.
double bennett_h(double x);

// Smallest ES/NS probability meeting the (epsilon, delta) guarantee: 1 / (1 + delta epsilon^2).
double min_probability(const ApproximationParams& params);

// ceil((m - 1) ln(2 / delta) / h(epsilon)). Returns 1 for m < 2.
std::uint64_t min_interval_samples(const ApproximationParams& params, std::uint64_t m);

// ceil((m - 1) / (delta epsilon^2)). Returns 1 for m < 2.
std::uint64_t chebyshev_interval_samples(const ApproximationParams& params, std::uint64_t m);

}  // namespace tbc
