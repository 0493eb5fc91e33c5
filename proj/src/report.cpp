#include "tbc/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "tbc/counting.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tbc {

using ordered_json = nlohmann::ordered_json;

RelativeErrors relative_errors(const EstimateVector& estimates, const CountVector& exact) {
  RelativeErrors out{};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (exact[i] == 0) continue;
    const double c = static_cast<double>(exact[i]);
    out[i] = std::fabs(estimates[i] - c) / c;
  }
  return out;
}

MapeResult mape(const EstimateVector& estimates, const CountVector& exact) {
  MapeResult r;
  double sum = 0.0;
  for (const auto& e : relative_errors(estimates, exact)) {
    if (!e) {
      r.zero_types_excluded = true;
      continue;
    }
    sum += *e;
    ++r.included_types;
  }
  if (r.included_types > 0) r.value = sum / r.included_types;
  return r;
}

Aggregates compute_aggregates(std::span<const RunRecord> runs, const std::optional<CountVector>& exact) {
  Aggregates agg;
  if (runs.empty()) return agg;
  const auto n = static_cast<double>(runs.size());
  for (const auto& r : runs) {
    for (std::size_t i = 0; i < kNumTypes; ++i) agg.mean[i] += r.estimates[i];
  }
  for (auto& x : agg.mean) x /= n;
  if (runs.size() > 1) {
    for (const auto& r : runs) {
      for (std::size_t i = 0; i < kNumTypes; ++i) {
        const double d = r.estimates[i] - agg.mean[i];
        agg.variance[i] += d * d;
      }
    }
    for (auto& x : agg.variance) x /= n - 1.0;
  }
  if (!exact) return agg;

  for (std::size_t i = 0; i < kNumTypes; ++i) {
    if ((*exact)[i] == 0) agg.excluded_types.push_back(static_cast<int>(i) + 1);
  }
  std::array<double, kNumTypes> rel_sum{};
  double mape_sum = 0.0;
  bool mape_defined = false;
  for (const auto& r : runs) {
    const auto rel = relative_errors(r.estimates, *exact);
    for (std::size_t i = 0; i < kNumTypes; ++i) {
      if (rel[i]) rel_sum[i] += *rel[i];
    }
    const auto m = mape(r.estimates, *exact);
    if (m.value) {
      mape_sum += *m.value;
      mape_defined = true;
    }
  }
  for (std::size_t i = 0; i < kNumTypes; ++i) {
    if ((*exact)[i] != 0) agg.rel_err[i] = rel_sum[i] / n;
  }
  if (mape_defined) agg.mape = mape_sum / n;
  return agg;
}

std::vector<EstimateReport> run_experiment(const TemporalBipartiteGraph& graph, Timestamp tau,
                                           std::span<const SamplingConfig> configs,
                                           const ExperimentOptions& options) {
  if (options.runs < 1) throw std::invalid_argument("runs must be at least 1");
  if (tau < 0) throw std::invalid_argument("tau must be non-negative");
  for (const auto& config : configs) config.validate();

  std::optional<CountVector> exact;
  if (options.with_exact) {
    const int threads = configs.empty() ? 1 : configs.front().threads;
    exact = exact_count(graph, tau, threads);
  }

  std::vector<EstimateReport> reports;
  reports.reserve(configs.size());
  for (const auto& config : configs) {
    EstimateReport report;
    report.config = config;
    report.config.seed = options.base_seed;
    report.tau = tau;
    report.runs_requested = options.runs;
    report.exact = exact;
    report.runs.resize(options.runs);

    const auto n = static_cast<std::int64_t>(options.runs);
    std::string failure;
    const auto one_run = [&](std::int64_t k) {
      SamplingConfig run_config = config;
      run_config.seed = options.base_seed + static_cast<std::uint64_t>(k);
      const auto start = std::chrono::steady_clock::now();
      const EstimateVector est = estimate(graph, tau, run_config);
      const auto stop = std::chrono::steady_clock::now();
      auto& rec = report.runs[static_cast<std::size_t>(k)];
      rec.estimates = est;
      rec.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      rec.seed = run_config.seed;
    };
#ifdef _OPENMP
    if (options.parallel_runs != 1) {
      const int nt = options.parallel_runs > 0 ? options.parallel_runs : omp_get_max_threads();
#pragma omp parallel for num_threads(nt) schedule(dynamic, 1)
      for (std::int64_t k = 0; k < n; ++k) {
        try {
          one_run(k);
        } catch (const std::exception& ex) {
#pragma omp critical(tbc_run_failure)
          if (failure.empty()) failure = "run " + std::to_string(k) + ": " + ex.what();
        }
      }
      if (!failure.empty()) throw std::runtime_error(failure);
    } else
#endif
    {
      for (std::int64_t k = 0; k < n; ++k) {
        try {
          one_run(k);
        } catch (const std::exception& ex) {
          throw std::runtime_error("run " + std::to_string(k) + " (seed " +
                                   std::to_string(options.base_seed + static_cast<std::uint64_t>(k)) +
                                   "): " + ex.what());
        }
      }
    }
    report.aggregates = compute_aggregates(report.runs, report.exact);
    reports.push_back(std::move(report));
  }
  return reports;
}

namespace {

void check_ascending(std::span<const Timestamp> taus) {
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (taus[i] < 0) throw std::invalid_argument("tau values must be non-negative");
    if (i > 0 && taus[i] < taus[i - 1]) throw std::invalid_argument("tau values must be ascending");
  }
}

}  // namespace

std::vector<CountVector> sweep_tau_exact(const TemporalBipartiteGraph& graph,
                                         std::span<const Timestamp> taus, int threads) {
  check_ascending(taus);
  std::vector<CountVector> rows;
  rows.reserve(taus.size());
  for (Timestamp tau : taus) rows.push_back(exact_count(graph, tau, threads));
  return rows;
}

std::vector<EstimateVector> sweep_tau_estimate(const TemporalBipartiteGraph& graph,
                                               std::span<const Timestamp> taus,
                                               const SamplingConfig& config) {
  check_ascending(taus);
  std::vector<EstimateVector> rows;
  rows.reserve(taus.size());
  for (Timestamp tau : taus) rows.push_back(estimate(graph, tau, config));
  return rows;
}

namespace {

ordered_json config_json(const EstimateReport& report) {
  const SamplingConfig& c = report.config;
  ordered_json j;
  j["method"] = to_string(c.method);
  j["tau"] = report.tau;
  switch (c.method) {
    case SamplingMethod::kEdge:
      j["p"] = c.p;
      break;
    case SamplingMethod::kNode:
      j["p"] = c.p;
      j["layer"] = c.layer == Layer::kUpper ? "upper" : "lower";
      break;
    case SamplingMethod::kInterval:
      j["s"] = c.s;
      j["c"] = c.c;
      break;
  }
  j["base_seed"] = c.seed;
  j["runs"] = report.runs_requested;
  return j;
}

ordered_json optional_array(const RelativeErrors& values) {
  ordered_json arr = ordered_json::array();
  for (const auto& v : values) {
    if (v) {
      arr.push_back(*v);
    } else {
      arr.push_back(nullptr);
    }
  }
  return arr;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string report_to_json(const EstimateReport& report, const ExportOptions& options) {
  ordered_json j;
  j["config"] = config_json(report);
  if (report.exact) {
    j["exact"] = report.exact->c;
  } else {
    j["exact"] = nullptr;
  }
  ordered_json runs = ordered_json::array();
  for (const auto& r : report.runs) {
    ordered_json rj;
    rj["estimates"] = r.estimates;
    if (options.include_timing) {
      rj["elapsed_ms"] = r.elapsed_ms;
    } else {
      rj["elapsed_ms"] = nullptr;
    }
    rj["seed"] = r.seed;
    runs.push_back(std::move(rj));
  }
  j["runs"] = std::move(runs);
  ordered_json agg;
  agg["mean"] = report.aggregates.mean;
  if (report.aggregates.mape) {
    agg["mape"] = *report.aggregates.mape;
  } else {
    agg["mape"] = nullptr;
  }
  agg["rel_err"] = optional_array(report.aggregates.rel_err);
  agg["variance"] = report.aggregates.variance;
  agg["excluded_types"] = report.aggregates.excluded_types;
  j["aggregates"] = std::move(agg);
  return j.dump(2);
}

void export_report(const EstimateReport& report, ReportFormat format, std::ostream& out,
                   const ExportOptions& options) {
  if (format == ReportFormat::kJson) {
    out << report_to_json(report, options) << '\n';
    return;
  }
  out << "run,seed,elapsed_ms";
  for (int i = 1; i <= kNumTypes; ++i) out << ",est_" << i;
  out << ",mape\n";
  for (std::size_t k = 0; k < report.runs.size(); ++k) {
    const auto& r = report.runs[k];
    out << k << ',' << r.seed << ',';
    if (options.include_timing) out << format_double(r.elapsed_ms);
    for (double x : r.estimates) out << ',' << format_double(x);
    out << ',';
    if (report.exact) {
      const auto m = mape(r.estimates, *report.exact);
      if (m.value) out << format_double(*m.value);
    }
    out << '\n';
  }
}

void export_report(const EstimateReport& report, ReportFormat format, const std::string& path,
                   const ExportOptions& options) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  export_report(report, format, out, options);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

Timestamp parse_duration(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty duration");
  std::int64_t unit = 1;
  std::string digits = text;
  switch (text.back()) {
    case 's': unit = 1; digits.pop_back(); break;
    case 'm': unit = 60; digits.pop_back(); break;
    case 'h': unit = 3600; digits.pop_back(); break;
    case 'd': unit = 86400; digits.pop_back(); break;
    default: break;
  }
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    throw std::invalid_argument("invalid duration '" + text + "'");
  }
  std::int64_t value = 0;
  for (char ch : digits) {
    if (__builtin_mul_overflow(value, 10, &value) || __builtin_add_overflow(value, ch - '0', &value)) {
      throw std::invalid_argument("duration out of range '" + text + "'");
    }
  }
  if (__builtin_mul_overflow(value, unit, &value)) throw std::invalid_argument("duration out of range '" + text + "'");
  return value;
}

}  // namespace tbc
