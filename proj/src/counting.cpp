#include "tbc/counting.hpp"

#include <algorithm>
#include <atomic>
#include <iostream>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tbc {

namespace {

Timestamp saturating_add(Timestamp t, Timestamp tau) {
  if (tau > 0 && t > std::numeric_limits<Timestamp>::max() - tau) {
    return std::numeric_limits<Timestamp>::max();
  }
  return t + tau;
}

}  // namespace

CountVector PerEdgeCounter::count(EdgeId edge_id, Timestamp tau) {
  if (tau < 0) throw std::invalid_argument("tau must be non-negative");
  const TemporalBipartiteGraph& g = *graph_;
  const TemporalEdge& e = g.edge(edge_id);
  const Timestamp t1 = e.time;
  const Timestamp hi = saturating_add(t1, tau);

  std::array<std::uint64_t, kNumTypes> local{};
  CountVector result;
  if (tau == 0) return result;

  // Wedges (ux, lx, uy) with the second edge strictly after t1.
  first_wedges_.clear();
  for (const auto& a : g.neighbors_in_window(NodeRef::lower(e.lower), t1, hi, true, true)) {
    if (a.other != e.upper) first_wedges_.push_back({a.other, a.time});
  }
  if (first_wedges_.empty()) return result;

  ux_window_.clear();
  for (const auto& a : g.neighbors_in_window(NodeRef::upper(e.upper), t1, hi, true, true)) {
    if (a.other != e.lower) ux_window_.push_back({a.other, a.time});
  }
  if (ux_window_.empty()) return result;

  const auto by_key = [](const Keyed& a, const Keyed& b) { return a.key < b.key; };
  std::sort(first_wedges_.begin(), first_wedges_.end(), by_key);
  std::sort(ux_window_.begin(), ux_window_.end(), by_key);

  for (std::size_t w = 0; w < first_wedges_.size();) {
    const NodeId uy = first_wedges_[w].key;
    std::size_t w_end = w;
    while (w_end < first_wedges_.size() && first_wedges_[w_end].key == uy) ++w_end;

    uy_window_.clear();
    for (const auto& a : g.neighbors_in_window(NodeRef::upper(uy), t1, hi, true, true)) {
      if (a.other != e.lower) uy_window_.push_back({a.other, a.time});
    }
    std::sort(uy_window_.begin(), uy_window_.end(), by_key);

    // Merge-join on the second center ly.
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ux_window_.size() && j < uy_window_.size()) {
      const NodeId kx = ux_window_[i].key;
      const NodeId ky = uy_window_[j].key;
      if (kx < ky) {
        ++i;
      } else if (ky < kx) {
        ++j;
      } else {
        std::size_t i_end = i;
        while (i_end < ux_window_.size() && ux_window_[i_end].key == kx) ++i_end;
        std::size_t j_end = j;
        while (j_end < uy_window_.size() && uy_window_[j_end].key == ky) ++j_end;
        for (std::size_t a = w; a < w_end; ++a) {
          const Timestamp t2 = first_wedges_[a].time;
          for (std::size_t b = i; b < i_end; ++b) {
            const Timestamp t3 = ux_window_[b].time;
            for (std::size_t c = j; c < j_end; ++c) {
              const int idx = classify_index(t1, t2, t3, uy_window_[c].time);
              if (idx >= 0) ++local[static_cast<std::size_t>(idx)];
            }
          }
        }
        i = i_end;
        j = j_end;
      }
    }
    w = w_end;
  }
  result.c = local;
  return result;
}

CountVector per_edge_count(const TemporalBipartiteGraph& graph, EdgeId edge, Timestamp tau) {
  PerEdgeCounter counter(graph);
  return counter.count(edge, tau);
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<CountVector> per_edge_counts(const TemporalBipartiteGraph& graph,
                                         std::span<const EdgeId> edges, Timestamp tau,
                                         int threads) {
  if (tau < 0) throw std::invalid_argument("tau must be non-negative");
  for (EdgeId id : edges) graph.edge(id);
  std::vector<CountVector> out(edges.size());
  const auto n = static_cast<std::int64_t>(edges.size());
#ifdef _OPENMP
  if (threads != 1) {
    const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(nt)
    {
      PerEdgeCounter counter(graph);
#pragma omp for schedule(dynamic, 256)
      for (std::int64_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = counter.count(edges[static_cast<std::size_t>(i)], tau);
      }
    }
    return out;
  }
#else
  (void)threads;
#endif
  PerEdgeCounter counter(graph);
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = counter.count(edges[static_cast<std::size_t>(i)], tau);
  }
  return out;
}

CountVector exact_count_serial(const TemporalBipartiteGraph& graph, Timestamp tau) {
  if (tau < 0) throw std::invalid_argument("tau must be non-negative");
  PerEdgeCounter counter(graph);
  CountVector total;
  for (EdgeId id = 0; id < graph.num_edges(); ++id) total += counter.count(id, tau);
  return total;
}

CountVector exact_count_parallel(const TemporalBipartiteGraph& graph, Timestamp tau, int threads) {
  if (tau < 0) throw std::invalid_argument("tau must be non-negative");
#ifdef _OPENMP
  const int nt = threads > 0 ? threads : omp_get_max_threads();
  const auto m = static_cast<std::int64_t>(graph.num_edges());
  CountVector total;
  std::atomic<bool> overflow{false};
#pragma omp parallel num_threads(nt)
  {
    PerEdgeCounter counter(graph);
    CountVector partial;
    try {
#pragma omp for schedule(dynamic, 1024) nowait
      for (std::int64_t i = 0; i < m; ++i) {
        partial += counter.count(static_cast<EdgeId>(i), tau);
      }
    } catch (const CounterOverflow&) {
      overflow = true;
    }
#pragma omp critical(tbc_exact_reduce)
    {
      try {
        total += partial;
      } catch (const CounterOverflow&) {
        overflow = true;
      }
    }
  }
  if (overflow) throw CounterOverflow();
  return total;
#else
  (void)threads;
  return exact_count_serial(graph, tau);
#endif
}

namespace {

struct OracleHit {
  int type;  // 0..5
  Timestamp span;
};

// Calls back for every 4-edge subset forming a butterfly with distinct
// timestamps. Type is determined by sorting the three later edges by time
// and matching their slot sequence against the permutation table.
template <class F>
void enumerate_butterflies(const TemporalBipartiteGraph& graph, F&& on_hit) {
  const auto edges = graph.edges();
  const std::size_t m = edges.size();
  const auto table = permutation_table();

  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      for (std::size_t c = b + 1; c < m; ++c) {
        for (std::size_t d = c + 1; d < m; ++d) {
          const std::array<const TemporalEdge*, 4> quad{&edges[a], &edges[b], &edges[c], &edges[d]};
          std::array<NodeId, 4> us{};
          std::array<NodeId, 4> ls{};
          for (int k = 0; k < 4; ++k) {
            us[static_cast<std::size_t>(k)] = quad[static_cast<std::size_t>(k)]->upper;
            ls[static_cast<std::size_t>(k)] = quad[static_cast<std::size_t>(k)]->lower;
          }
          std::sort(us.begin(), us.end());
          std::sort(ls.begin(), ls.end());
          // Exactly two distinct nodes per layer, each used twice.
          if (!(us[0] == us[1] && us[2] == us[3] && us[1] != us[2])) continue;
          if (!(ls[0] == ls[1] && ls[2] == ls[3] && ls[1] != ls[2])) continue;
          // Each of the four node pairs present exactly once.
          std::array<std::pair<NodeId, NodeId>, 4> pairs{};
          for (std::size_t k = 0; k < 4; ++k) pairs[k] = {quad[k]->upper, quad[k]->lower};
          std::sort(pairs.begin(), pairs.end());
          if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) continue;

          std::array<Timestamp, 4> times{};
          for (std::size_t k = 0; k < 4; ++k) times[k] = quad[k]->time;
          std::array<Timestamp, 4> sorted_times = times;
          std::sort(sorted_times.begin(), sorted_times.end());
          if (std::adjacent_find(sorted_times.begin(), sorted_times.end()) != sorted_times.end()) continue;

          std::size_t first = 0;
          for (std::size_t k = 1; k < 4; ++k) {
            if (times[k] < times[first]) first = k;
          }
          const NodeId u1 = quad[first]->upper;
          const NodeId l1 = quad[first]->lower;

          std::array<std::pair<Timestamp, EdgeSlot>, 3> rest{};
          std::size_t r = 0;
          for (std::size_t k = 0; k < 4; ++k) {
            if (k == first) continue;
            const bool same_u = quad[k]->upper == u1;
            const bool same_l = quad[k]->lower == l1;
            const EdgeSlot slot = same_u ? EdgeSlot::kE12 : (same_l ? EdgeSlot::kE21 : EdgeSlot::kE22);
            rest[r++] = {times[k], slot};
          }
          std::sort(rest.begin(), rest.end());
          const std::array<EdgeSlot, 3> order{rest[0].second, rest[1].second, rest[2].second};
          int type = -1;
          for (const auto& bt : table) {
            if (bt.slot_order == order) type = bt.index - 1;
          }
          on_hit(OracleHit{type, sorted_times[3] - sorted_times[0]});
        }
      }
    }
  }
}

void warn_if_large(const TemporalBipartiteGraph& graph) {
  if (graph.num_edges() > kBruteForceGuideline) {
    std::cerr << "warning: brute-force counting over " << graph.num_edges()
              << " edges is O(m^4) and may be very slow\n";
  }
}

}  // namespace

CountVector brute_force_count(const TemporalBipartiteGraph& graph, Timestamp tau) {
  const Timestamp taus[] = {tau};
  return brute_force_count(graph, std::span<const Timestamp>(taus)).front();
}

std::vector<CountVector> brute_force_count(const TemporalBipartiteGraph& graph,
                                           std::span<const Timestamp> taus) {
  for (Timestamp tau : taus) {
    if (tau < 0) throw std::invalid_argument("tau must be non-negative");
  }
  warn_if_large(graph);
  std::vector<CountVector> out(taus.size());
  enumerate_butterflies(graph, [&](const OracleHit& hit) {
    for (std::size_t k = 0; k < taus.size(); ++k) {
      if (hit.span <= taus[k]) out[k].increment(hit.type);
    }
  });
  return out;
}

std::vector<WedgeInstance> wedge_instances(const TemporalBipartiteGraph& graph, NodeRef center,
                                           NodeId end_a, NodeId end_b, Timestamp lo, Timestamp hi) {
  const Layer end_layer = center.layer == Layer::kUpper ? Layer::kLower : Layer::kUpper;
  const NodeId n_end = end_layer == Layer::kUpper ? graph.num_upper() : graph.num_lower();
  if (end_a >= n_end || end_b >= n_end) throw std::out_of_range("wedge end node out of range");
  if (end_a == end_b) throw std::invalid_argument("wedge end nodes must differ");
  std::vector<WedgeInstance> out;
  if (hi <= lo) {
    graph.adjacency(center);
    return out;
  }
  const auto window = graph.neighbors_in_window(center, lo, hi, true, true);
  for (const auto& a : window) {
    if (a.other != end_a) continue;
    for (const auto& b : window) {
      if (b.other != end_b) continue;
      out.push_back(WedgeInstance{center, end_a, end_b, a.edge, b.edge, a.time, b.time});
    }
  }
  return out;
}

}  // namespace tbc
