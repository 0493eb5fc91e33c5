// Command-line front end: exact and sampled temporal butterfly counts, the
// brute-force oracle, graph statistics, bound calculators and a generator.
//
// Exit codes: 0 success, 1 usage error, 2 data error. Reports go to stdout,
// diagnostics to stderr.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tbc/bounds.hpp"
#include "tbc/counting.hpp"
#include "tbc/graph.hpp"
#include "tbc/motif.hpp"
#include "tbc/report.hpp"
#include "tbc/sampling.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kUsageError = 1;
constexpr int kDataError = 2;
constexpr std::size_t kOracleLimit = 200;

// Bad input data, as opposed to bad flags.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputOptions {
  std::string path;
  double timestamp_scale = 0.0;
};

void add_input(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("--input,-i", in.path, "Edge-list file: <upper> <lower> <timestamp> per line")
      ->required();
  cmd->add_option("--timestamp-scale", in.timestamp_scale,
                  "Multiply timestamps by this factor and round; enables fractional input");
}

tbc::TemporalBipartiteGraph load(const InputOptions& in) {
  tbc::LoadOptions options;
  options.timestamp_scale = in.timestamp_scale;
  try {
    return tbc::load_graph_file(in.path, options);
  } catch (const std::exception& ex) {
    throw DataError(in.path + ": " + ex.what());
  }
}

std::vector<tbc::Timestamp> parse_tau_list(const std::string& text) {
  std::vector<tbc::Timestamp> taus;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) taus.push_back(tbc::parse_duration(item));
  if (taus.empty()) throw std::invalid_argument("empty tau list");
  return taus;
}

ordered_json counts_json(const tbc::CountVector& c) { return ordered_json(c.c); }

struct SamplingFlags {
  std::string method = "es";
  double p = 0.1;
  std::string layer = "upper";
  std::uint64_t s = 100;
  double c = 1.0;
  int threads = 1;

  tbc::SamplingConfig config(std::uint64_t seed) const {
    tbc::SamplingConfig cfg;
    cfg.method = tbc::parse_method(method);
    cfg.p = p;
    if (layer == "upper") {
      cfg.layer = tbc::Layer::kUpper;
    } else if (layer == "lower") {
      cfg.layer = tbc::Layer::kLower;
    } else {
      throw std::invalid_argument("layer must be 'upper' or 'lower'");
    }
    cfg.s = s;
    cfg.c = c;
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.validate();
    return cfg;
  }
};

void add_sampling(CLI::App* cmd, SamplingFlags& f) {
  cmd->add_option("--method", f.method, "Sampling method: es, ns or is");
  cmd->add_option("--p", f.p, "Edge/node sampling probability (es, ns)");
  cmd->add_option("--layer", f.layer, "Layer sampled by ns: upper or lower");
  cmd->add_option("--s", f.s, "Number of interval anchors (is)");
  cmd->add_option("--c", f.c, "Interval length multiplier (is)");
  cmd->add_option("--threads", f.threads, "Per-edge counting threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal butterfly counting on temporal bipartite graphs"};
  app.require_subcommand(1);

  InputOptions input;
  std::string tau_text;
  std::string relabel_text = "123456";
  int threads = 1;

  auto* exact_cmd = app.add_subcommand("exact", "Exact counts of the six butterfly types");
  add_input(exact_cmd, input);
  exact_cmd->add_option("--tau", tau_text, "Duration constraint (integer, or with s/m/h/d suffix)")->required();
  exact_cmd->add_option("--relabel", relabel_text, "Type relabeling as six digits, e.g. 213456");
  exact_cmd->add_option("--threads", threads, "Counting threads (0 = all cores)");

  bool force = false;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force counts over all 4-edge subsets");
  add_input(oracle_cmd, input);
  oracle_cmd->add_option("--tau", tau_text, "Duration constraint")->required();
  oracle_cmd->add_option("--relabel", relabel_text, "Type relabeling as six digits");
  oracle_cmd->add_flag("--force", force, "Run even above the size guard");

  SamplingFlags sampling;
  std::uint64_t seed = 0;
  std::uint64_t runs = 10;
  bool with_exact = false;
  bool timing = false;
  int parallel_runs = 1;
  std::string format = "json";
  std::string out_path;
  auto* estimate_cmd = app.add_subcommand("estimate", "Sampling estimates over repeated runs");
  add_input(estimate_cmd, input);
  estimate_cmd->add_option("--tau", tau_text, "Duration constraint")->required();
  add_sampling(estimate_cmd, sampling);
  estimate_cmd->add_option("--seed", seed, "Base seed; run k uses seed + k")->required();
  estimate_cmd->add_option("--runs", runs, "Number of independent runs");
  estimate_cmd->add_flag("--with-exact", with_exact, "Compute exact counts and error metrics");
  estimate_cmd->add_flag("--timing", timing, "Record per-run wall-clock time in the report");
  estimate_cmd->add_option("--parallel-runs", parallel_runs, "Concurrent runs (0 = all cores)");
  estimate_cmd->add_option("--format", format, "Report format: json or csv");
  estimate_cmd->add_option("--out", out_path, "Write the report to a file instead of stdout");

  std::string tau_list;
  auto* sweep_cmd = app.add_subcommand("sweep", "Counts for a list of tau values (CSV)");
  add_input(sweep_cmd, input);
  sweep_cmd->add_option("--tau-list", tau_list, "Comma-separated ascending durations")->required();
  auto* sweep_method = sweep_cmd->add_option("--method", sampling.method,
                                             "Estimate with es, ns or is instead of exact counting");
  sweep_cmd->add_option("--p", sampling.p, "Sampling probability (es, ns)");
  sweep_cmd->add_option("--layer", sampling.layer, "Layer sampled by ns");
  sweep_cmd->add_option("--s", sampling.s, "Number of interval anchors (is)");
  sweep_cmd->add_option("--c", sampling.c, "Interval length multiplier (is)");
  sweep_cmd->add_option("--seed", seed, "Seed for estimated sweeps");
  sweep_cmd->add_option("--threads", threads, "Counting threads (0 = all cores)");

  auto* stats_cmd = app.add_subcommand("stats", "Graph statistics");
  add_input(stats_cmd, input);

  double epsilon = 0.0;
  double delta = 0.0;
  std::uint64_t m = 0;
  double count = -1.0;
  double p = 0.0;
  std::uint64_t s = 0;
  auto* bounds_cmd = app.add_subcommand("bounds", "Variance bounds and (epsilon, delta) sample sizes");
  bounds_cmd->add_option("--epsilon", epsilon, "Relative error, in (0, 1)")->required();
  bounds_cmd->add_option("--delta", delta, "Failure probability, in (0, 1)")->required();
  auto* m_opt = bounds_cmd->add_option("--m", m, "Number of edges");
  auto* count_opt = bounds_cmd->add_option("--count", count, "Butterfly count C");
  auto* p_opt = bounds_cmd->add_option("--p", p, "Sampling probability");
  auto* s_opt = bounds_cmd->add_option("--s", s, "Number of interval anchors");

  tbc::NodeId nu = 0;
  tbc::NodeId nl = 0;
  std::size_t gen_m = 0;
  tbc::Timestamp timespan = 0;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a uniform random temporal bipartite graph");
  gen_cmd->add_option("--nu", nu, "Upper-layer nodes")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--nl", nl, "Lower-layer nodes")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--m", gen_m, "Edges")->required();
  gen_cmd->add_option("--timespan", timespan, "Timestamps drawn from [0, timespan]")->required();
  gen_cmd->add_option("--seed", seed, "Generator seed")->required();
  gen_cmd->add_option("--out", gen_out, "Output edge-list file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*exact_cmd || *oracle_cmd) {
      const tbc::Timestamp tau = tbc::parse_duration(tau_text);
      const auto relabel = tbc::Relabeling::parse(relabel_text);
      const auto graph = load(input);
      tbc::CountVector counts;
      if (*exact_cmd) {
        counts = tbc::exact_count(graph, tau, threads);
      } else {
        if (graph.num_edges() > kOracleLimit && !force) {
          throw DataError("oracle refuses graphs above " + std::to_string(kOracleLimit) +
                          " edges (got " + std::to_string(graph.num_edges()) + "); pass --force");
        }
        counts = tbc::brute_force_count(graph, tau);
      }
      const auto labeled = tbc::apply_relabel(counts, relabel);
      ordered_json j;
      j["tau"] = tau;
      j["relabel"] = relabel.to_string();
      j["counts"] = counts_json(labeled);
      j["total"] = labeled.total();
      std::cout << j.dump() << '\n';
    } else if (*estimate_cmd) {
      const tbc::Timestamp tau = tbc::parse_duration(tau_text);
      if (format != "json" && format != "csv") throw std::invalid_argument("format must be json or csv");
      const auto config = sampling.config(seed);
      const auto graph = load(input);
      tbc::ExperimentOptions opts;
      opts.runs = runs;
      opts.base_seed = seed;
      opts.with_exact = with_exact;
      opts.parallel_runs = parallel_runs;
      const tbc::SamplingConfig configs[] = {config};
      const auto reports = tbc::run_experiment(graph, tau, configs, opts);
      const auto fmt = format == "csv" ? tbc::ReportFormat::kCsv : tbc::ReportFormat::kJson;
      tbc::ExportOptions export_opts;
      export_opts.include_timing = timing;
      if (out_path.empty()) {
        tbc::export_report(reports.front(), fmt, std::cout, export_opts);
      } else {
        tbc::export_report(reports.front(), fmt, out_path, export_opts);
      }
    } else if (*sweep_cmd) {
      const auto taus = parse_tau_list(tau_list);
      const bool estimated = sweep_method->count() > 0;
      std::optional<tbc::SamplingConfig> config;
      if (estimated) {
        sampling.threads = threads;
        config = sampling.config(seed);
      }
      const auto graph = load(input);
      std::cout << "tau";
      for (int i = 1; i <= tbc::kNumTypes; ++i) std::cout << ",B" << i;
      std::cout << '\n';
      if (estimated) {
        const auto rows = tbc::sweep_tau_estimate(graph, taus, *config);
        for (std::size_t k = 0; k < taus.size(); ++k) {
          std::cout << taus[k];
          for (double x : rows[k]) std::cout << ',' << ordered_json(x).dump();
          std::cout << '\n';
        }
      } else {
        const auto rows = tbc::sweep_tau_exact(graph, taus, threads);
        for (std::size_t k = 0; k < taus.size(); ++k) {
          std::cout << taus[k];
          for (auto x : rows[k].c) std::cout << ',' << x;
          std::cout << '\n';
        }
      }
    } else if (*stats_cmd) {
      const auto graph = load(input);
      const auto st = tbc::graph_stats(graph);
      ordered_json j;
      j["n_upper"] = st.n_upper;
      j["n_lower"] = st.n_lower;
      j["n"] = st.n;
      j["m"] = st.m;
      j["static_edges"] = st.static_edge_count;
      j["d_max"] = st.d_max;
      j["timespan"] = st.timespan;
      std::cout << j.dump() << '\n';
    } else if (*bounds_cmd) {
      const tbc::ApproximationParams params{epsilon, delta};
      params.validate();
      ordered_json j;
      j["epsilon"] = epsilon;
      j["delta"] = delta;
      j["h_epsilon"] = tbc::bennett_h(epsilon);
      j["min_probability"] = tbc::min_probability(params);
      if (m_opt->count() > 0) {
        j["m"] = m;
        j["min_interval_samples"] = tbc::min_interval_samples(params, m);
        j["chebyshev_interval_samples"] = tbc::chebyshev_interval_samples(params, m);
      }
      if (count_opt->count() > 0 && p_opt->count() > 0) {
        j["es_ns_variance_bound"] = tbc::es_ns_variance_bound(count, p);
      }
      if (count_opt->count() > 0 && m_opt->count() > 0 && s_opt->count() > 0) {
        j["is_variance_bound"] = tbc::is_variance_bound(count, m, s);
      }
      std::cout << j.dump() << '\n';
    } else if (*gen_cmd) {
      if (timespan < 0) throw std::invalid_argument("timespan must be non-negative");
      const auto graph = tbc::generate_synthetic(nu, nl, gen_m, timespan, seed);
      std::ofstream out(gen_out, std::ios::binary);
      if (!out) throw DataError("cannot write '" + gen_out + "'");
      tbc::write_edge_list(graph, out);
      if (!out) throw DataError("write to '" + gen_out + "' failed");
      const auto st = tbc::graph_stats(graph);
      ordered_json j;
      j["out"] = gen_out;
      j["m"] = st.m;
      j["static_edges"] = st.static_edge_count;
      j["timespan"] = st.timespan;
      std::cout << j.dump() << '\n';
    }
  } catch (const DataError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kDataError;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "usage error: " << ex.what() << '\n';
    return kUsageError;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kDataError;
  }
  return 0;
}
