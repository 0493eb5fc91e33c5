#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tbc/graph.hpp"
#include "tbc/motif.hpp"
#include "tbc/rng.hpp"

namespace tbc {

enum class SamplingMethod { kEdge, kNode, kInterval };

std::string to_string(SamplingMethod method);
SamplingMethod parse_method(const std::string& name);

struct SamplingConfig {
  SamplingMethod method = SamplingMethod::kEdge;
  double p = 0.1;             // ES, NS
  Layer layer = Layer::kUpper;  // NS
  std::uint64_t s = 1;        // IS anchor count
  double c = 1.0;             // IS window multiplier
  std::uint64_t seed = 0;
  int threads = 1;            // per-edge counting workers; 1 = serial

  // Throws std::invalid_argument when a parameter relevant to `method` is out of range.
  void validate() const;
};

using EstimateVector = std::array<double, kNumTypes>;

struct EdgeMultiplicity {
  EdgeId edge;
  std::uint64_t multiplicity;

  friend bool operator==(const EdgeMultiplicity&, const EdgeMultiplicity&) = default;
};

// Bernoulli(p) per edge. Returned ids are ascending.
std::vector<EdgeId> sample_edges_es(const TemporalBipartiteGraph& graph, double p, Rng& rng);

// Bernoulli(p) per node of `layer`; keeps every edge incident to a sampled node.
std::vector<EdgeId> sample_edges_ns(const TemporalBipartiteGraph& graph, double p, Layer layer,
                                    Rng& rng);

// s anchors drawn uniformly with replacement; each anchor at time t adds every
// edge with timestamp in [t, t + c*tau] once. Ascending by edge id.
std::vector<EdgeMultiplicity> sample_edges_is(const TemporalBipartiteGraph& graph, std::uint64_t s,
                                              double c, Timestamp tau, Rng& rng);

// Integer width of the IS window: floor(c * tau). An edge at t' lies in
// [t, t + c*tau] iff t' - t <= floor(c * tau) because timestamps are integers.
Timestamp interval_width(double c, Timestamp tau);

// Number of edges with timestamp in [t - window, t], t the edge's timestamp.
std::uint64_t trailing_edge_count(const TemporalBipartiteGraph& graph, EdgeId edge, Timestamp window);

// C_i(e) / p.
EstimateVector weight_es_ns(const CountVector& counts, double p);

// C_i(e) * m / (s * m'_e), for one occurrence.
EstimateVector weight_is(const CountVector& counts, std::uint64_t m, std::uint64_t s,
                         std::uint64_t trailing);

// Sampled edge set plus per-edge counts, before weighting. Exposed so tests
// can look inside a single run.
struct SampleDetail {
  std::vector<EdgeMultiplicity> edges;  // multiplicity 1 for ES/NS
  std::vector<CountVector> counts;      // parallel to edges
};

SampleDetail draw_sample(const TemporalBipartiteGraph& graph, Timestamp tau,
                         const SamplingConfig& config);

EstimateVector estimate(const TemporalBipartiteGraph& graph, Timestamp tau,
                        const SamplingConfig& config);

EstimateVector weigh_sample(const TemporalBipartiteGraph& graph, Timestamp tau,
                            const SamplingConfig& config, const SampleDetail& sample);

}  // namespace tbc
