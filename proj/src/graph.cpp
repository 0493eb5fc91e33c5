#include "tbc/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "tbc/rng.hpp"

namespace tbc {

namespace {

void build_csr(std::size_t n, std::span<const TemporalEdge> edges, bool by_upper,
               std::vector<std::size_t>& offsets, std::vector<AdjEntry>& adj) {
  offsets.assign(n + 1, 0);
  for (const auto& e : edges) ++offsets[(by_upper ? e.upper : e.lower) + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  adj.resize(edges.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  // Edges are visited in id order, so every list comes out sorted.
  for (const auto& e : edges) {
    const NodeId self = by_upper ? e.upper : e.lower;
    const NodeId other = by_upper ? e.lower : e.upper;
    adj[cursor[self]++] = AdjEntry{other, e.time, e.id};
  }
}

std::vector<std::string_view> split_fields(std::string_view line, std::size_t max_fields) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size() && fields.size() < max_fields) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

Timestamp parse_timestamp(std::string_view token, const LoadOptions& options, std::size_t line) {
  Timestamp value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc() && ptr == last) {
    if (options.timestamp_scale > 0.0 && options.timestamp_scale != 1.0) {
      return static_cast<Timestamp>(std::llround(static_cast<double>(value) * options.timestamp_scale));
    }
    return value;
  }
  if (ec == std::errc::result_out_of_range) {
    throw ParseError(line, "timestamp out of 64-bit range: '" + std::string(token) + "'");
  }
  double real = 0.0;
  auto [rptr, rec] = std::from_chars(first, last, real);
  if (rec != std::errc() || rptr != last || !std::isfinite(real)) {
    throw ParseError(line, "non-numeric timestamp '" + std::string(token) + "'");
  }
  if (options.timestamp_scale <= 0.0) {
    throw ParseError(line, "fractional timestamp '" + std::string(token) +
                               "' (set a timestamp scale to accept it)");
  }
  const double scaled = std::round(real * options.timestamp_scale);
  if (!(std::fabs(scaled) < 9.2e18)) {
    throw ParseError(line, "scaled timestamp out of range: '" + std::string(token) + "'");
  }
  return static_cast<Timestamp>(scaled);
}

}  // namespace

TemporalBipartiteGraph::TemporalBipartiteGraph(NodeId n_upper, NodeId n_lower,
                                               std::span<const RawEdge> edges)
    : n_upper_(n_upper), n_lower_(n_lower) {
  if (edges.size() > std::size_t{UINT32_MAX}) {
    throw std::invalid_argument("too many edges for 32-bit edge ids");
  }
  std::vector<std::uint32_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return edges[a].time < edges[b].time; });
  edges_.reserve(edges.size());
  for (std::uint32_t pos = 0; pos < order.size(); ++pos) {
    const RawEdge& r = edges[order[pos]];
    if (r.upper >= n_upper || r.lower >= n_lower) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    edges_.push_back(TemporalEdge{pos, r.upper, r.lower, r.time});
  }
  build_csr(n_upper_, edges_, true, upper_offsets_, upper_adj_);
  build_csr(n_lower_, edges_, false, lower_offsets_, lower_adj_);
}

const TemporalEdge& TemporalBipartiteGraph::edge(EdgeId id) const {
  if (id >= edges_.size()) throw std::out_of_range("edge id " + std::to_string(id) + " out of range");
  return edges_[id];
}

void TemporalBipartiteGraph::check_node(NodeRef node) const {
  const NodeId n = node.layer == Layer::kUpper ? n_upper_ : n_lower_;
  if (node.index >= n) {
    throw std::out_of_range(std::string(node.layer == Layer::kUpper ? "upper" : "lower") +
                            " node " + std::to_string(node.index) + " out of range");
  }
}

std::span<const AdjEntry> TemporalBipartiteGraph::adjacency(NodeRef node) const {
  check_node(node);
  const auto& offsets = node.layer == Layer::kUpper ? upper_offsets_ : lower_offsets_;
  const auto& adj = node.layer == Layer::kUpper ? upper_adj_ : lower_adj_;
  return std::span<const AdjEntry>(adj).subspan(offsets[node.index],
                                                offsets[node.index + 1] - offsets[node.index]);
}

std::span<const AdjEntry> TemporalBipartiteGraph::neighbors_in_window(NodeRef node, Timestamp lo,
                                                                      Timestamp hi,
                                                                      bool lo_exclusive,
                                                                      bool hi_inclusive) const {
  const auto adj = adjacency(node);
  const auto by_time = [](const AdjEntry& a, Timestamp t) { return a.time < t; };
  const auto time_before = [](Timestamp t, const AdjEntry& a) { return t < a.time; };
  const auto first = lo_exclusive ? std::upper_bound(adj.begin(), adj.end(), lo, time_before)
                                  : std::lower_bound(adj.begin(), adj.end(), lo, by_time);
  const auto last = hi_inclusive ? std::upper_bound(first, adj.end(), hi, time_before)
                                 : std::lower_bound(first, adj.end(), hi, by_time);
  if (last <= first) return {};
  return {first, last};
}

std::pair<EdgeId, EdgeId> TemporalBipartiteGraph::edge_range(Timestamp lo, Timestamp hi) const {
  if (hi < lo) return {0, 0};
  const auto first = std::lower_bound(edges_.begin(), edges_.end(), lo,
                                      [](const TemporalEdge& e, Timestamp t) { return e.time < t; });
  const auto last = std::upper_bound(first, edges_.end(), hi,
                                     [](Timestamp t, const TemporalEdge& e) { return t < e.time; });
  return {static_cast<EdgeId>(first - edges_.begin()), static_cast<EdgeId>(last - edges_.begin())};
}

void TemporalBipartiteGraph::set_tokens(std::vector<std::string> upper, std::vector<std::string> lower) {
  if (upper.size() != n_upper_ || lower.size() != n_lower_) {
    throw std::invalid_argument("token table size does not match node counts");
  }
  upper_tokens_ = std::move(upper);
  lower_tokens_ = std::move(lower);
}

TemporalBipartiteGraph TemporalBipartiteGraph::transposed() const {
  std::vector<RawEdge> swapped;
  swapped.reserve(edges_.size());
  for (const auto& e : edges_) swapped.push_back(RawEdge{e.lower, e.upper, e.time});
  TemporalBipartiteGraph out(n_lower_, n_upper_, swapped);
  if (!upper_tokens_.empty()) out.set_tokens(lower_tokens_, upper_tokens_);
  return out;
}

std::vector<RawEdge> TemporalBipartiteGraph::raw_edges() const {
  std::vector<RawEdge> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.push_back(RawEdge{e.upper, e.lower, e.time});
  return out;
}

bool operator==(const TemporalBipartiteGraph& a, const TemporalBipartiteGraph& b) {
  return a.n_upper_ == b.n_upper_ && a.n_lower_ == b.n_lower_ && a.edges_ == b.edges_ &&
         a.upper_offsets_ == b.upper_offsets_ && a.lower_offsets_ == b.lower_offsets_ &&
         a.upper_adj_ == b.upper_adj_ && a.lower_adj_ == b.lower_adj_ &&
         a.upper_tokens_ == b.upper_tokens_ && a.lower_tokens_ == b.lower_tokens_;
}

TemporalBipartiteGraph load_graph(std::istream& in, const LoadOptions& options) {
  std::unordered_map<std::string, NodeId> upper_ids;
  std::unordered_map<std::string, NodeId> lower_ids;
  std::vector<std::string> upper_tokens;
  std::vector<std::string> lower_tokens;
  std::vector<RawEdge> raw;

  const auto intern = [](std::string_view token, std::unordered_map<std::string, NodeId>& ids,
                         std::vector<std::string>& tokens) {
    auto [it, inserted] = ids.try_emplace(std::string(token), static_cast<NodeId>(tokens.size()));
    if (inserted) tokens.emplace_back(token);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto start = line.find_first_not_of(" \t\r\n\v\f");
    if (start == std::string::npos) continue;
    if (options.comment_prefixes.find(line[start]) != std::string::npos) continue;
    const auto fields = split_fields(line, 3);
    if (fields.size() < 3) {
      throw ParseError(line_no, "expected at least 3 fields (upper lower timestamp), got " +
                                    std::to_string(fields.size()));
    }
    const Timestamp t = parse_timestamp(fields[2], options, line_no);
    const NodeId u = intern(fields[0], upper_ids, upper_tokens);
    const NodeId l = intern(fields[1], lower_ids, lower_tokens);
    raw.push_back(RawEdge{u, l, t});
  }
  if (in.bad()) throw std::runtime_error("read error");

  TemporalBipartiteGraph graph(static_cast<NodeId>(upper_tokens.size()),
                               static_cast<NodeId>(lower_tokens.size()), raw);
  graph.set_tokens(std::move(upper_tokens), std::move(lower_tokens));
  return graph;
}

TemporalBipartiteGraph load_graph_file(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return load_graph(in, options);
}

void write_edge_list(const TemporalBipartiteGraph& graph, std::ostream& out) {
  const auto& ut = graph.upper_tokens();
  const auto& lt = graph.lower_tokens();
  for (const auto& e : graph.edges()) {
    if (ut.empty()) {
      out << e.upper << ' ' << e.lower << ' ' << e.time << '\n';
    } else {
      out << ut[e.upper] << ' ' << lt[e.lower] << ' ' << e.time << '\n';
    }
  }
}

std::size_t degree(const TemporalBipartiteGraph& graph, NodeRef node) { return graph.degree(node); }

std::vector<std::pair<NodeId, NodeId>> project_static(const TemporalBipartiteGraph& graph) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(graph.num_edges());
  for (const auto& e : graph.edges()) pairs.emplace_back(e.upper, e.lower);
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

TemporalBipartiteGraph generate_synthetic(NodeId n_upper, NodeId n_lower, std::size_t m,
                                          Timestamp timespan, std::uint64_t seed) {
  if (n_upper == 0 || n_lower == 0) throw std::invalid_argument("layers must be non-empty");
  if (timespan < 0) throw std::invalid_argument("timespan must be non-negative");
  Rng rng(seed);
  std::vector<RawEdge> raw;
  raw.reserve(m);
  const auto span = static_cast<std::uint64_t>(timespan) + 1;
  for (std::size_t i = 0; i < m; ++i) {
    const auto u = static_cast<NodeId>(rng.uniform_index(n_upper));
    const auto l = static_cast<NodeId>(rng.uniform_index(n_lower));
    const auto t = static_cast<Timestamp>(rng.uniform_index(span));
    raw.push_back(RawEdge{u, l, t});
  }
  return TemporalBipartiteGraph(n_upper, n_lower, raw);
}

GraphStats graph_stats(const TemporalBipartiteGraph& graph) {
  GraphStats s;
  s.n_upper = graph.num_upper();
  s.n_lower = graph.num_lower();
  s.n = graph.num_nodes();
  s.m = graph.num_edges();
  s.static_edge_count = project_static(graph).size();
  for (NodeId u = 0; u < graph.num_upper(); ++u) {
    s.d_max = std::max<std::uint64_t>(s.d_max, graph.degree(NodeRef::upper(u)));
  }
  for (NodeId l = 0; l < graph.num_lower(); ++l) {
    s.d_max = std::max<std::uint64_t>(s.d_max, graph.degree(NodeRef::lower(l)));
  }
  if (s.m > 1) s.timespan = graph.edges().back().time - graph.edges().front().time;
  return s;
}

}  // namespace tbc
