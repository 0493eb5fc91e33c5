#include "tbc/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "tbc/counting.hpp"

namespace tbc {

namespace {

void check_probability(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::invalid_argument("sampling probability must be in (0, 1], got " + std::to_string(p));
  }
}

void check_interval_params(std::uint64_t s, double c, Timestamp tau) {
  if (s < 1) throw std::invalid_argument("anchor count s must be at least 1");
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("window multiplier c must be positive, got " + std::to_string(c));
  }
  if (tau < 0) throw std::invalid_argument("tau must be non-negative");
}

// Compensated summation, switched on for large samples only.
struct Accumulator {
  EstimateVector sum{};
  EstimateVector carry{};
  bool compensated = false;

  void add(std::size_t i, double x) {
    if (!compensated) {
      sum[i] += x;
      return;
    }
    const double y = x - carry[i];
    const double t = sum[i] + y;
    carry[i] = (t - sum[i]) - y;
    sum[i] = t;
  }
};

constexpr std::size_t kCompensationThreshold = 1'000'000;

}  // namespace

std::string to_string(SamplingMethod method) {
  switch (method) {
    case SamplingMethod::kEdge: return "es";
    case SamplingMethod::kNode: return "ns";
    case SamplingMethod::kInterval: return "is";
  }
  return "?";
}

SamplingMethod parse_method(const std::string& name) {
  if (name == "es") return SamplingMethod::kEdge;
  if (name == "ns") return SamplingMethod::kNode;
  if (name == "is") return SamplingMethod::kInterval;
  throw std::invalid_argument("unknown sampling method '" + name + "' (expected es, ns or is)");
}

void SamplingConfig::validate() const {
  switch (method) {
    case SamplingMethod::kEdge:
    case SamplingMethod::kNode:
      check_probability(p);
      break;
    case SamplingMethod::kInterval:
      check_interval_params(s, c, 0);
      break;
  }
}

std::vector<EdgeId> sample_edges_es(const TemporalBipartiteGraph& graph, double p, Rng& rng) {
  check_probability(p);
  std::vector<EdgeId> out;
  for (EdgeId id = 0; id < graph.num_edges(); ++id) {
    if (rng.bernoulli(p)) out.push_back(id);
  }
  return out;
}

std::vector<EdgeId> sample_edges_ns(const TemporalBipartiteGraph& graph, double p, Layer layer,
                                    Rng& rng) {
  check_probability(p);
  const NodeId n = layer == Layer::kUpper ? graph.num_upper() : graph.num_lower();
  std::vector<EdgeId> out;
  for (NodeId v = 0; v < n; ++v) {
    if (!rng.bernoulli(p)) continue;
    for (const auto& a : graph.adjacency(NodeRef{layer, v})) out.push_back(a.edge);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Timestamp interval_width(double c, Timestamp tau) {
  // c is usually a short decimal such as 0.6; snap products within rounding
  // noise of an integer so that 0.6 * 10 gives 6, not 5.
  const long double x = static_cast<long double>(c) * static_cast<long double>(tau);
  const long double nearest = std::round(x);
  const long double w =
      std::fabs(x - nearest) <= 1e-12L * std::max(1.0L, std::fabs(x)) ? nearest : std::floor(x);
  if (w >= static_cast<long double>(std::numeric_limits<Timestamp>::max())) {
    return std::numeric_limits<Timestamp>::max();
  }
  return static_cast<Timestamp>(w);
}

std::vector<EdgeMultiplicity> sample_edges_is(const TemporalBipartiteGraph& graph, std::uint64_t s,
                                              double c, Timestamp tau, Rng& rng) {
  check_interval_params(s, c, tau);
  std::vector<EdgeMultiplicity> out;
  const std::size_t m = graph.num_edges();
  if (m == 0) return out;
  const Timestamp width = interval_width(c, tau);
  const auto edges = graph.edges();

  // Difference map over edge ids; windows are contiguous id ranges.
  std::map<EdgeId, std::int64_t> delta;
  for (std::uint64_t k = 0; k < s; ++k) {
    const auto anchor = static_cast<EdgeId>(rng.uniform_index(m));
    const Timestamp t = edges[anchor].time;
    const Timestamp hi = t > std::numeric_limits<Timestamp>::max() - width
                             ? std::numeric_limits<Timestamp>::max()
                             : t + width;
    const auto [lo_id, hi_id] = graph.edge_range(t, hi);
    ++delta[lo_id];
    --delta[hi_id];
  }
  std::int64_t running = 0;
  for (auto it = delta.begin(); it != delta.end(); ++it) {
    running += it->second;
    const auto next = std::next(it);
    if (running <= 0 || next == delta.end()) continue;
    for (EdgeId id = it->first; id < next->first; ++id) {
      out.push_back(EdgeMultiplicity{id, static_cast<std::uint64_t>(running)});
    }
  }
  return out;
}

std::uint64_t trailing_edge_count(const TemporalBipartiteGraph& graph, EdgeId edge, Timestamp window) {
  if (window < 0) throw std::invalid_argument("window must be non-negative");
  const Timestamp t = graph.edge(edge).time;
  const Timestamp lo = t < std::numeric_limits<Timestamp>::min() + window
                           ? std::numeric_limits<Timestamp>::min()
                           : t - window;
  const auto [first, last] = graph.edge_range(lo, t);
  return last - first;
}

EstimateVector weight_es_ns(const CountVector& counts, double p) {
  check_probability(p);
  EstimateVector out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<double>(counts[i]) / p;
  return out;
}

EstimateVector weight_is(const CountVector& counts, std::uint64_t m, std::uint64_t s,
                         std::uint64_t trailing) {
  if (s == 0) throw std::invalid_argument("anchor count s must be at least 1");
  if (trailing == 0) throw std::logic_error("trailing edge count is zero; the edge index is inconsistent");
  const double scale = static_cast<double>(m) / (static_cast<double>(s) * static_cast<double>(trailing));
  EstimateVector out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<double>(counts[i]) * scale;
  return out;
}

SampleDetail draw_sample(const TemporalBipartiteGraph& graph, Timestamp tau,
                         const SamplingConfig& config) {
  config.validate();
  if (tau < 0) throw std::invalid_argument("tau must be non-negative");
  Rng rng(config.seed);
  SampleDetail detail;
  std::vector<EdgeId> ids;
  switch (config.method) {
    case SamplingMethod::kEdge:
      ids = sample_edges_es(graph, config.p, rng);
      break;
    case SamplingMethod::kNode:
      ids = sample_edges_ns(graph, config.p, config.layer, rng);
      break;
    case SamplingMethod::kInterval:
      detail.edges = sample_edges_is(graph, config.s, config.c, tau, rng);
      ids.reserve(detail.edges.size());
      for (const auto& em : detail.edges) ids.push_back(em.edge);
      break;
  }
  if (config.method != SamplingMethod::kInterval) {
    detail.edges.reserve(ids.size());
    for (EdgeId id : ids) detail.edges.push_back(EdgeMultiplicity{id, 1});
  }
  // Counted once per distinct edge; IS multiplicity is applied when weighting.
  detail.counts = per_edge_counts(graph, ids, tau, config.threads);
  return detail;
}

EstimateVector weigh_sample(const TemporalBipartiteGraph& graph, Timestamp tau,
                            const SamplingConfig& config, const SampleDetail& sample) {
  Accumulator acc;
  acc.compensated = sample.edges.size() > kCompensationThreshold;
  const std::uint64_t m = graph.num_edges();
  const Timestamp width =
      config.method == SamplingMethod::kInterval ? interval_width(config.c, tau) : 0;
  for (std::size_t k = 0; k < sample.edges.size(); ++k) {
    const CountVector& counts = sample.counts[k];
    if (counts.is_zero()) continue;
    EstimateVector w{};
    if (config.method == SamplingMethod::kInterval) {
      w = weight_is(counts, m, config.s, trailing_edge_count(graph, sample.edges[k].edge, width));
      const auto mult = static_cast<double>(sample.edges[k].multiplicity);
      for (auto& x : w) x *= mult;
    } else {
      w = weight_es_ns(counts, config.p);
    }
    for (std::size_t i = 0; i < w.size(); ++i) acc.add(i, w[i]);
  }
  return acc.sum;
}

EstimateVector estimate(const TemporalBipartiteGraph& graph, Timestamp tau,
                        const SamplingConfig& config) {
  const SampleDetail sample = draw_sample(graph, tau, config);
  return weigh_sample(graph, tau, config, sample);
}

}  // namespace tbc
