#pragma once

#include <vector>

#include "tbc/graph.hpp"

namespace tbc::testing {

// u1=0, u2=1, l1=0, l2=1.
// e1=(u1,l1,1) e2=(u2,l1,2) e3=(u1,l2,3) e4=(u2,l2,4); ids follow time order.
inline TemporalBipartiteGraph g1(Timestamp t4 = 4) {
  const std::vector<RawEdge> raw{{0, 0, 1}, {1, 0, 2}, {0, 1, 3}, {1, 1, t4}};
  return TemporalBipartiteGraph(2, 2, raw);
}

// G1 plus e5=(u2,l2,5).
inline TemporalBipartiteGraph g2() {
  const std::vector<RawEdge> raw{{0, 0, 1}, {1, 0, 2}, {0, 1, 3}, {1, 1, 4}, {1, 1, 5}};
  return TemporalBipartiteGraph(2, 2, raw);
}

inline TemporalBipartiteGraph shifted(const TemporalBipartiteGraph& g, Timestamp delta) {
  auto raw = g.raw_edges();
  for (auto& e : raw) e.time += delta;
  return TemporalBipartiteGraph(g.num_upper(), g.num_lower(), raw);
}

}  // namespace tbc::testing
