#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tbc/graph.hpp"
#include "tbc/motif.hpp"

namespace tbc {

// Two edges sharing a center node, ending at distinct opposite-layer nodes.
struct WedgeInstance {
  NodeRef center;
  NodeId end_a;
  NodeId end_b;
  EdgeId edge_a;
  EdgeId edge_b;
  Timestamp time_a;
  Timestamp time_b;
};

// Size above which brute_force_count warns about its O(m^4) cost.
inline constexpr std::size_t kBruteForceGuideline = 100;

// Counts the butterfly instances whose strictly earliest edge is `edge`,
// keeping every other edge in (t, t + tau]. Wedge enumeration around the
// edge's lower endpoint, then candidate second centers by merging the two
// upper endpoints' windowed neighbor lists.
//
// Reuses scratch buffers across calls; one instance per thread.
class PerEdgeCounter {
 public:
  explicit PerEdgeCounter(const TemporalBipartiteGraph& graph) : graph_(&graph) {}

  CountVector count(EdgeId edge, Timestamp tau);

 private:
  struct Keyed {
    NodeId key;
    Timestamp time;
  };

  const TemporalBipartiteGraph* graph_;
  std::vector<Keyed> first_wedges_;
  std::vector<Keyed> ux_window_;
  std::vector<Keyed> uy_window_;
};

CountVector per_edge_count(const TemporalBipartiteGraph& graph, EdgeId edge, Timestamp tau);

// Per-edge counts for a list of edges, in the same order. threads <= 0 uses
// the OpenMP default; 1 runs serially.
std::vector<CountVector> per_edge_counts(const TemporalBipartiteGraph& graph,
                                         std::span<const EdgeId> edges, Timestamp tau,
                                         int threads = 1);

// Serial reference: sum of per_edge_count over all edges in id order.
CountVector exact_count_serial(const TemporalBipartiteGraph& graph, Timestamp tau);

// OpenMP kernel over edges with a per-thread partial reduction. Falls back to
// the serial path when built without OpenMP.
CountVector exact_count_parallel(const TemporalBipartiteGraph& graph, Timestamp tau,
                                 int threads = 0);

inline CountVector exact_count(const TemporalBipartiteGraph& graph, Timestamp tau, int threads = 1) {
  return threads == 1 ? exact_count_serial(graph, tau) : exact_count_parallel(graph, tau, threads);
}

// Enumerates every 4-edge subset. Independent of the wedge-based path; meant
// as a test oracle for small graphs.
CountVector brute_force_count(const TemporalBipartiteGraph& graph, Timestamp tau);

// Same enumeration shared across several tau values.
std::vector<CountVector> brute_force_count(const TemporalBipartiteGraph& graph,
                                           std::span<const Timestamp> taus);

// All pairs (edge_a: end_a-center, edge_b: end_b-center) with both timestamps
// in (lo, hi]. end_a and end_b live in the layer opposite to center.
std::vector<WedgeInstance> wedge_instances(const TemporalBipartiteGraph& graph, NodeRef center,
                                           NodeId end_a, NodeId end_b, Timestamp lo, Timestamp hi);

int max_threads();

}  // namespace tbc
