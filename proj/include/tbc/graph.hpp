#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tbc {

using Timestamp = std::int64_t;
using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

enum class Layer : std::uint8_t { kUpper, kLower };

struct NodeRef {
  Layer layer;
  NodeId index;

  static NodeRef upper(NodeId i) { return {Layer::kUpper, i}; }
  static NodeRef lower(NodeId i) { return {Layer::kLower, i}; }
};

// One timestamped upper-lower interaction. Edge ids are dense and equal to the
// edge's position in the (timestamp, input order) sorted edge sequence.
struct TemporalEdge {
  EdgeId id;
  NodeId upper;
  NodeId lower;
  Timestamp time;

  friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

// Unsorted input edge, before indexing.
struct RawEdge {
  NodeId upper;
  NodeId lower;
  Timestamp time;
};

struct AdjEntry {
  NodeId other;
  Timestamp time;
  EdgeId edge;

  friend bool operator==(const AdjEntry&, const AdjEntry&) = default;
};

struct GraphStats {
  std::uint64_t n_upper = 0;
  std::uint64_t n_lower = 0;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t static_edge_count = 0;
  std::uint64_t d_max = 0;
  Timestamp timespan = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct LoadOptions {
  std::string comment_prefixes = "%#";
  // When non-zero, timestamps may be fractional and are multiplied by this
  // factor and rounded to the nearest integer. When zero, only integers parse.
  double timestamp_scale = 0.0;
};

// Immutable temporal bipartite multigraph. Adjacency is stored in CSR form per
// layer; every list is ordered by (timestamp, edge id).
class TemporalBipartiteGraph {
 public:
  TemporalBipartiteGraph() = default;

  // Sorts the edges by timestamp (stable w.r.t. input order) and assigns ids.
  // Throws std::invalid_argument if an endpoint is out of range.
  TemporalBipartiteGraph(NodeId n_upper, NodeId n_lower, std::span<const RawEdge> edges);

  NodeId num_upper() const { return n_upper_; }
  NodeId num_lower() const { return n_lower_; }
  std::size_t num_nodes() const { return std::size_t{n_upper_} + n_lower_; }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const TemporalEdge> edges() const { return edges_; }
  const TemporalEdge& edge(EdgeId id) const;

  // Full adjacency of a node, ordered by (timestamp, edge id).
  std::span<const AdjEntry> adjacency(NodeRef node) const;
  std::size_t degree(NodeRef node) const { return adjacency(node).size(); }

  // Adjacency entries with timestamp in the interval bounded by lo and hi.
  // Bounds are closed unless lo_exclusive / !hi_inclusive say otherwise.
  std::span<const AdjEntry> neighbors_in_window(NodeRef node, Timestamp lo, Timestamp hi,
                                                bool lo_exclusive, bool hi_inclusive) const;

  // Edge id range [first, last) of edges with timestamp in [lo, hi].
  std::pair<EdgeId, EdgeId> edge_range(Timestamp lo, Timestamp hi) const;

  // Original identifiers, when the graph came from a file. Empty otherwise.
  const std::vector<std::string>& upper_tokens() const { return upper_tokens_; }
  const std::vector<std::string>& lower_tokens() const { return lower_tokens_; }
  void set_tokens(std::vector<std::string> upper, std::vector<std::string> lower);

  // Same edges with the two layers swapped. Edge ids are preserved.
  TemporalBipartiteGraph transposed() const;

  std::vector<RawEdge> raw_edges() const;

  friend bool operator==(const TemporalBipartiteGraph& a, const TemporalBipartiteGraph& b);

 private:
  void check_node(NodeRef node) const;

  NodeId n_upper_ = 0;
  NodeId n_lower_ = 0;
  std::vector<TemporalEdge> edges_;
  std::vector<std::size_t> upper_offsets_{0};
  std::vector<std::size_t> lower_offsets_{0};
  std::vector<AdjEntry> upper_adj_;
  std::vector<AdjEntry> lower_adj_;
  std::vector<std::string> upper_tokens_;
  std::vector<std::string> lower_tokens_;
};

// Reads a whitespace-separated edge list: `<upper> <lower> <timestamp> [...]`.
// Node tokens are mapped to dense indices per layer in first-appearance order.
TemporalBipartiteGraph load_graph(std::istream& in, const LoadOptions& options = {});
TemporalBipartiteGraph load_graph_file(const std::string& path, const LoadOptions& options = {});

// Writes edges in id order, one per line, using the stored tokens when present
// and the dense indices otherwise.
void write_edge_list(const TemporalBipartiteGraph& graph, std::ostream& out);

std::size_t degree(const TemporalBipartiteGraph& graph, NodeRef node);

std::vector<std::pair<NodeId, NodeId>> project_static(const TemporalBipartiteGraph& graph);

// Uniform endpoints per layer, uniform integer timestamps in [0, timespan].
TemporalBipartiteGraph generate_synthetic(NodeId n_upper, NodeId n_lower, std::size_t m,
                                          Timestamp timespan, std::uint64_t seed);

GraphStats graph_stats(const TemporalBipartiteGraph& graph);

}  // namespace tbc
