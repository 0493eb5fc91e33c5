#include <doctest.h>

#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "tbc/counting.hpp"
#include "tbc/sampling.hpp"

using namespace tbc;
using tbc::testing::g1;

namespace {

std::vector<EdgeId> ids_of(const std::vector<EdgeMultiplicity>& v) {
  std::vector<EdgeId> out;
  for (const auto& e : v) out.push_back(e.edge);
  return out;
}

}  // namespace

TEST_CASE("ES: p=1 keeps everything, bad p rejected") {
  const auto g = generate_synthetic(3, 3, 40, 10, 1);
  Rng rng(5);
  CHECK(sample_edges_es(g, 1.0, rng).size() == 40);
  CHECK_THROWS_AS(sample_edges_es(g, 0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_edges_es(g, 1.5, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_edges_es(g, std::nan(""), rng), std::invalid_argument);
}

TEST_CASE("ES: tiny p almost always samples nothing") {
  const auto g = generate_synthetic(3, 3, 40, 10, 1);
  int empty = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    empty += sample_edges_es(g, 1e-9, rng).empty() ? 1 : 0;
  }
  CHECK(empty == 200);
}

TEST_CASE("ES and NS: per-edge inclusion frequency is p") {
  const auto g = generate_synthetic(10, 10, 60, 10, 2);
  const double p = 0.3;
  const int draws = 10'000;
  const double se = std::sqrt(p * (1 - p) / draws);
  int es_hits = 0;
  int ns_hits = 0;
  const EdgeId probe = 17;
  for (int k = 0; k < draws; ++k) {
    Rng a(static_cast<std::uint64_t>(k));
    const auto es = sample_edges_es(g, p, a);
    es_hits += std::binary_search(es.begin(), es.end(), probe) ? 1 : 0;
    Rng b(static_cast<std::uint64_t>(k) + 1'000'000);
    const auto ns = sample_edges_ns(g, p, Layer::kLower, b);
    ns_hits += std::binary_search(ns.begin(), ns.end(), probe) ? 1 : 0;
  }
  CHECK(std::fabs(es_hits / double(draws) - p) < 4 * se);
  CHECK(std::fabs(ns_hits / double(draws) - p) < 4 * se);
}

TEST_CASE("NS keeps whole neighborhoods without duplicates") {
  const auto g = g1();
  std::set<std::vector<EdgeId>> outcomes;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const auto s = sample_edges_ns(g, 0.5, Layer::kUpper, rng);
    CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
    outcomes.insert(s);
  }
  // u1 owns {e1, e3} = ids {0, 2}; u2 owns {1, 3}.
  const std::set<std::vector<EdgeId>> expected{{}, {0, 2}, {1, 3}, {0, 1, 2, 3}};
  CHECK(outcomes == expected);
  Rng rng(1);
  CHECK(sample_edges_ns(g, 1.0, Layer::kLower, rng).size() == 4);
}

TEST_CASE("IS: windows are closed [t, t + c*tau]") {
  const auto g = g1();
  std::set<std::vector<EdgeId>> outcomes;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const auto s = sample_edges_is(g, 1, 1.0, 1, rng);
    for (const auto& e : s) CHECK(e.multiplicity == 1);
    outcomes.insert(ids_of(s));
  }
  // Anchor e3 (t=3) covers [3,4] -> {e3, e4} = ids {2, 3}.
  const std::set<std::vector<EdgeId>> expected{{0, 1}, {1, 2}, {2, 3}, {3}};
  CHECK(outcomes == expected);
}

TEST_CASE("IS: single-edge graph gets multiplicity s") {
  const std::vector<RawEdge> raw{{0, 0, 42}};
  const TemporalBipartiteGraph g(1, 1, raw);
  Rng rng(3);
  const auto s = sample_edges_is(g, 7, 1.0, 10, rng);
  REQUIRE(s.size() == 1);
  CHECK(s[0] == EdgeMultiplicity{0, 7});
  Rng rng2(3);
  CHECK(sample_edges_is(TemporalBipartiteGraph(), 5, 1.0, 10, rng2).empty());
  CHECK_THROWS_AS(sample_edges_is(g, 0, 1.0, 10, rng2), std::invalid_argument);
  CHECK_THROWS_AS(sample_edges_is(g, 1, 0.0, 10, rng2), std::invalid_argument);
}

TEST_CASE("IS: mean multiplicity is s * m'_e / m") {
  const auto g = generate_synthetic(4, 4, 50, 100, 9);
  const std::uint64_t s = 20;
  const double c = 0.6;
  const Timestamp tau = 10;
  const int draws = 3000;
  const Timestamp width = interval_width(c, tau);
  CHECK(width == 6);
  std::vector<double> sum(g.num_edges(), 0.0);
  for (int k = 0; k < draws; ++k) {
    Rng rng(static_cast<std::uint64_t>(k));
    for (const auto& e : sample_edges_is(g, s, c, tau, rng)) sum[e.edge] += static_cast<double>(e.multiplicity);
  }
  const double m = static_cast<double>(g.num_edges());
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const double q = static_cast<double>(trailing_edge_count(g, id, width)) / m;
    const double mean = sum[id] / draws;
    const double se = std::sqrt(s * q * (1 - q) / draws);
    CAPTURE(id);
    CHECK(std::fabs(mean - s * q) <= 5 * se + 1e-12);
  }
}

TEST_CASE("trailing_edge_count") {
  const auto g = g1();
  CHECK(trailing_edge_count(g, 3, 2) == 3);
  CHECK(trailing_edge_count(g, 2, 0) == 1);
  CHECK(trailing_edge_count(g, 0, 1000) == 1);
  const std::vector<RawEdge> tied{{0, 0, 5}, {0, 0, 5}, {0, 0, 6}};
  const TemporalBipartiteGraph t(1, 1, tied);
  CHECK(trailing_edge_count(t, 0, 0) == 2);
  CHECK_THROWS(trailing_edge_count(g, 9, 1));
}

TEST_CASE("weights") {
  CHECK(weight_es_ns(CountVector{{2, 0, 0, 0, 0, 0}}, 0.5) == EstimateVector{4, 0, 0, 0, 0, 0});
  const CountVector c{{3, 1, 4, 1, 5, 9}};
  CHECK(weight_es_ns(c, 1.0) == EstimateVector{3, 1, 4, 1, 5, 9});
  CHECK(weight_es_ns(CountVector{}, 0.25) == EstimateVector{});
  CHECK_THROWS(weight_es_ns(c, 0.0));

  CHECK(weight_is(CountVector{{1, 0, 0, 0, 0, 0}}, 4, 2, 2) == EstimateVector{1, 0, 0, 0, 0, 0});
  CHECK(weight_is(c, 10, 1, 10) == EstimateVector{3, 1, 4, 1, 5, 9});
  CHECK(weight_is(CountVector{}, 10, 3, 2) == EstimateVector{});
  CHECK_THROWS_AS(weight_is(c, 10, 1, 0), std::logic_error);
}

TEST_CASE("estimate: full-coverage sampling is exact") {
  const auto g = generate_synthetic(5, 5, 120, 60, 4);
  const auto exact = exact_count(g, 20);
  SamplingConfig es;
  es.method = SamplingMethod::kEdge;
  es.p = 1.0;
  SamplingConfig ns = es;
  ns.method = SamplingMethod::kNode;
  ns.layer = Layer::kLower;
  for (const auto& cfg : {es, ns}) {
    const auto est = estimate(g, 20, cfg);
    for (std::size_t i = 0; i < kNumTypes; ++i) CHECK(est[i] == static_cast<double>(exact[i]));
  }
}

TEST_CASE("estimate: deterministic, non-negative, parallel-invariant") {
  const auto g = generate_synthetic(5, 5, 150, 60, 8);
  for (auto method : {SamplingMethod::kEdge, SamplingMethod::kNode, SamplingMethod::kInterval}) {
    SamplingConfig cfg;
    cfg.method = method;
    cfg.p = 0.4;
    cfg.s = 10;
    cfg.seed = 1234;
    const auto a = estimate(g, 15, cfg);
    const auto b = estimate(g, 15, cfg);
    CHECK(a == b);
    cfg.threads = 3;
    CHECK(estimate(g, 15, cfg) == a);
    for (double x : a) {
      CHECK(x >= 0.0);
      CHECK(std::isfinite(x));
    }
  }
}

TEST_CASE("estimate: empty sample and empty graph give zeros") {
  SamplingConfig cfg;
  cfg.method = SamplingMethod::kInterval;
  cfg.s = 3;
  CHECK(estimate(TemporalBipartiteGraph(), 10, cfg) == EstimateVector{});
  cfg.method = SamplingMethod::kEdge;
  cfg.p = 1e-12;
  CHECK(estimate(generate_synthetic(3, 3, 30, 10, 1), 10, cfg) == EstimateVector{});
}

TEST_CASE("estimate: IS per-edge work is shared across multiplicities") {
  const auto g = generate_synthetic(4, 4, 80, 40, 21);
  SamplingConfig cfg;
  cfg.method = SamplingMethod::kInterval;
  cfg.s = 30;
  cfg.c = 1.5;
  cfg.seed = 77;
  const Timestamp tau = 10;
  const auto detail = draw_sample(g, tau, cfg);
  // Weighted sum recomputed by hand, one occurrence at a time.
  EstimateVector manual{};
  const Timestamp width = interval_width(cfg.c, tau);
  for (std::size_t k = 0; k < detail.edges.size(); ++k) {
    const auto counts = per_edge_count(g, detail.edges[k].edge, tau);
    CHECK(counts == detail.counts[k]);
    const auto w = weight_is(counts, g.num_edges(), cfg.s, trailing_edge_count(g, detail.edges[k].edge, width));
    for (std::uint64_t r = 0; r < detail.edges[k].multiplicity; ++r) {
      for (std::size_t i = 0; i < kNumTypes; ++i) manual[i] += w[i];
    }
  }
  const auto est = estimate(g, tau, cfg);
  for (std::size_t i = 0; i < kNumTypes; ++i) {
    CHECK(est[i] == doctest::Approx(manual[i]).epsilon(1e-12));
  }
}

TEST_CASE("estimate: small-scale unbiasedness for all three methods") {
  const auto g = generate_synthetic(4, 4, 120, 100, 5);
  const Timestamp tau = 30;
  const auto exact = exact_count(g, tau);
  REQUIRE(exact.total() > 0);
  const int runs = 600;
  for (auto method : {SamplingMethod::kEdge, SamplingMethod::kNode, SamplingMethod::kInterval}) {
    SamplingConfig cfg;
    cfg.method = method;
    cfg.p = 0.4;
    cfg.s = 40;
    std::array<double, kNumTypes> sum{};
    std::array<double, kNumTypes> sq{};
    for (int r = 0; r < runs; ++r) {
      cfg.seed = 10'000 + static_cast<std::uint64_t>(r);
      const auto est = estimate(g, tau, cfg);
      for (std::size_t i = 0; i < kNumTypes; ++i) {
        sum[i] += est[i];
        sq[i] += est[i] * est[i];
      }
    }
    for (std::size_t i = 0; i < kNumTypes; ++i) {
      const double mean = sum[i] / runs;
      const double var = (sq[i] - runs * mean * mean) / (runs - 1);
      const double se = std::sqrt(std::max(var, 0.0) / runs);
      CAPTURE(to_string(method));
      CAPTURE(i);
      CHECK(std::fabs(mean - static_cast<double>(exact[i])) <= 4 * se + 1e-9);
    }
  }
}

TEST_CASE("config validation and method names") {
  SamplingConfig cfg;
  cfg.method = SamplingMethod::kNode;
  cfg.p = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.method = SamplingMethod::kInterval;
  cfg.s = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.s = 1;
  cfg.c = -1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.c = 0.5;
  CHECK_NOTHROW(cfg.validate());
  CHECK(parse_method("is") == SamplingMethod::kInterval);
  CHECK(to_string(SamplingMethod::kNode) == "ns");
  CHECK_THROWS(parse_method("xs"));
}
