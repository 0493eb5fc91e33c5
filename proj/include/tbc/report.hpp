#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "tbc/graph.hpp"
#include "tbc/motif.hpp"
#include "tbc/sampling.hpp"

namespace tbc {

using RelativeErrors = std::array<std::optional<double>, kNumTypes>;

// |est_i - exact_i| / exact_i; nullopt where exact_i == 0.
RelativeErrors relative_errors(const EstimateVector& estimates, const CountVector& exact);

struct MapeResult {
  std::optional<double> value;  // nullopt when every exact count is zero
  int included_types = 0;
  bool zero_types_excluded = false;
};

// Mean relative error over the types with a positive exact count.
MapeResult mape(const EstimateVector& estimates, const CountVector& exact);

struct RunRecord {
  EstimateVector estimates{};
  double elapsed_ms = 0.0;
  std::uint64_t seed = 0;
};

struct Aggregates {
  EstimateVector mean{};
  std::optional<double> mape;  // mean of per-run MAPE values
  RelativeErrors rel_err{};    // per-type mean of per-run relative errors
  EstimateVector variance{};   // unbiased sample variance, 0 for a single run
  std::vector<int> excluded_types;  // 1-based types left out of MAPE
};

struct EstimateReport {
  SamplingConfig config;  // seed holds the base seed
  Timestamp tau = 0;
  std::uint64_t runs_requested = 0;
  std::optional<CountVector> exact;
  std::vector<RunRecord> runs;
  Aggregates aggregates;
};

Aggregates compute_aggregates(std::span<const RunRecord> runs, const std::optional<CountVector>& exact);

struct ExperimentOptions {
  std::uint64_t runs = 10;
  std::uint64_t base_seed = 0;
  bool with_exact = false;
  // Independent runs executed concurrently; 1 keeps the single-threaded protocol.
  int parallel_runs = 1;
};

// One report per config. Run k uses seed base_seed + k. Exact counts, when
// requested, are computed once and shared by all configs.
std::vector<EstimateReport> run_experiment(const TemporalBipartiteGraph& graph, Timestamp tau,
                                           std::span<const SamplingConfig> configs,
                                           const ExperimentOptions& options);

// Exact counts per tau, in input order. Taus must be ascending.
std::vector<CountVector> sweep_tau_exact(const TemporalBipartiteGraph& graph,
                                         std::span<const Timestamp> taus, int threads = 1);

// Single-run estimates per tau with the given config.
std::vector<EstimateVector> sweep_tau_estimate(const TemporalBipartiteGraph& graph,
                                               std::span<const Timestamp> taus,
                                               const SamplingConfig& config);

enum class ReportFormat { kJson, kCsv };

struct ExportOptions {
  // Wall-clock timings vary between invocations; when false they are written
  // as null (JSON) or left empty (CSV) so the output is reproducible.
  bool include_timing = true;
};

void export_report(const EstimateReport& report, ReportFormat format, std::ostream& out,
                   const ExportOptions& options = {});
void export_report(const EstimateReport& report, ReportFormat format, const std::string& path,
                   const ExportOptions& options = {});

std::string report_to_json(const EstimateReport& report, const ExportOptions& options = {});

// Parses a duration such as "3600", "90s", "15m", "2h" or "1d" (seconds-based).
Timestamp parse_duration(const std::string& text);

}  // namespace tbc
