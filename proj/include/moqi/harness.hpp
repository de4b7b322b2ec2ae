#ifndef MOQI_HARNESS_HPP
#define MOQI_HARNESS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "moqi/core.hpp"
#include "moqi/indicators.hpp"
#include "moqi/moea.hpp"
#include "moqi/problems.hpp"

namespace moqi {

/// Indicator selection and parameters shared by all experiment cells.
struct IndicatorParams {
  std::vector<std::string> metrics = {"igd", "delta_p", "hv", "entropy"};
  double p = 2.0;                    // order for delta_p
  double qp_tol = 1e-12;             // entropy QP stationarity tolerance
  bool hv_normalize = true;          // divide by true-front nadir, ref 1.1^m
  double hv_reference_scale = 1.1;
  std::size_t hv_mc_samples = 100000;
};

struct ProblemRef {
  std::string name;
  int m = 0;  // 0 keeps the registry default
  int n = 0;
};

/// kind is "nsga2", "random" or "csv" (externally produced populations;
/// csv_path may contain "{run}", replaced by the 1-based run number).
struct AlgorithmRef {
  std::string kind;
  std::string label;  // row label; defaults to kind when empty
  std::string csv_path;
};

struct ExperimentConfig {
  std::vector<ProblemRef> problems;
  std::vector<AlgorithmRef> algorithms;
  int runs = 30;
  std::uint64_t seed = 1000;  // run j uses seed + j
  EvolutionConfig evolution;
  IndicatorParams indicators;
  std::size_t reference_front_size = 1000;
};

struct ExperimentCell {
  std::string problem;
  std::string algorithm;
  std::string indicator;
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
  std::vector<double> raw;
};

struct ExperimentResult {
  std::vector<ExperimentCell> cells;
  double wall_seconds = 0.0;
};

/// Mean and population standard deviation (divisor = count).
std::pair<double, double> summarize(const std::vector<double>& values);

/// Run every (problem, algorithm) cell with matched per-run seeds and compute
/// the configured indicators on each final population. Deterministic: the
/// same config yields bit-identical cells.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Write summary.csv (mean/std per cell) and raw.csv (per-run values) into
/// an existing directory.
void write_experiment_csv(const ExperimentResult& result, const std::string& dir);

struct TimingConfig {
  std::string problem = "dtlz2";
  std::vector<int> sizes = {100, 200, 400, 800, 1600};       // population sizes
  std::vector<int> objective_counts = {2, 3, 4, 5, 6, 8, 10};
  int reps = 5;
  std::uint64_t seed = 7;
  std::size_t mc_samples = 100000;
  double qp_tol = 1e-12;
};

struct TimingRow {
  std::string indicator;
  int size = 0;  // population size k, or objective count m
  double median_seconds = 0.0;
  int reps = 0;
  bool ordering_flag = false;  // soft check: delta_p came out slower than H
};

/// Median wall time of delta_2, hypervolume and H over random populations of
/// each size (reference set four times as large). Population generation and
/// Jacobian evaluation happen outside the timed window.
std::vector<TimingRow> timing_study_popsize(const TimingConfig& cfg);

/// Same, sweeping the objective count with pop size 50*M and reference set
/// 100*M; hypervolume switches to Monte Carlo above four objectives.
std::vector<TimingRow> timing_study_objectives(const TimingConfig& cfg);

/// Write timing rows with the given size-column header ("k" or "m").
void write_timing_csv(const std::vector<TimingRow>& rows, const std::string& path,
                      const std::string& size_column);

struct TraceConfig {
  std::string problem = "zdt2";
  int m = 0;
  int n = 0;
  std::string algorithm = "nsga2";
  EvolutionConfig evolution;
  double qp_tol = 1e-12;
  std::size_t front_size = 1000;  // 0 disables the igd column
  std::uint64_t front_seed = 12345;
};

struct TracePoint {
  int generation = 0;
  long long evaluations = 0;
  double h = 0.0;
  double igd_value = 0.0;  // NaN when no reference front was requested
};

/// H (and optionally igd) of the non-dominated subset of every generation
/// snapshot of one run.
std::vector<TracePoint> convergence_trace(const TraceConfig& cfg);

/// Same computation over externally supplied snapshots.
std::vector<TracePoint> trace_from_snapshots(const std::vector<Population>& snapshots,
                                             const ProblemSpec& problem,
                                             double qp_tol,
                                             const ReferenceFront* front);

void write_trace_csv(const std::vector<TracePoint>& rows, const std::string& path);

}  // namespace moqi

#endif  // MOQI_HARNESS_HPP
