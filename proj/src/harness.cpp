#include "moqi/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <utility>

#include "moqi/csv_io.hpp"
#include "moqi/rng.hpp"

namespace moqi {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size();
  if (k == 0) return 0.0;
  return k % 2 == 1 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
}

std::string replace_run_token(std::string path, int run) {
  const std::string token = "{run}";
  auto pos = path.find(token);
  while (pos != std::string::npos) {
    path.replace(pos, token.size(), std::to_string(run));
    pos = path.find(token, pos);
  }
  return path;
}

Vector nadir_of(const std::vector<Vector>& points) {
  Vector nadir = points.front();
  for (const auto& p : points)
    for (std::size_t j = 0; j < nadir.size(); ++j) nadir[j] = std::max(nadir[j], p[j]);
  return nadir;
}

JacobianFn jacobian_for(const ProblemSpec& spec) {
  return [spec](const Individual& ind) {
    if (!ind.decision)
      throw UsageError("entropy indicator: member has no decision vector to differentiate");
    return jacobian(spec, *ind.decision);
  };
}

/// Uniform random population inside the box, objectives and Jacobians filled in.
Population random_population(const ProblemSpec& spec, int k, Rng& rng) {
  Population pop;
  pop.problem_id = spec.name;
  pop.members.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    Vector x(static_cast<std::size_t>(spec.n));
    for (int j = 0; j < spec.n; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      x[ju] = spec.bounds.lower[ju] +
              rng.uniform() * (spec.bounds.upper[ju] - spec.bounds.lower[ju]);
    }
    Individual ind;
    ind.objectives = evaluate(spec, x);
    ind.jacobian = jacobian(spec, x);
    ind.decision = std::move(x);
    pop.members.push_back(std::move(ind));
  }
  return pop;
}

Vector margin_reference(const std::vector<Vector>& points, double margin) {
  Vector ref = nadir_of(points);
  for (double& r : ref) r += margin;
  return ref;
}

double run_algorithm_metric(const std::string& metric, const Population& pop,
                            const ReferenceFront& front, const Vector& nadir,
                            const ProblemSpec& spec, const IndicatorParams& ip,
                            std::uint64_t run_seed) {
  const auto m = pop.objective_count();
  if (metric == "igd") return igd(pop, front);
  if (metric == "gd") return gd(pop, front);
  if (metric == "igd_p") return igd_p(pop, front, ip.p);
  if (metric == "gd_p") return gd_p(pop, front, ip.p);
  if (metric == "delta_p") return delta_p(pop, front, ip.p);
  if (metric == "hv" || metric == "hv_mc") {
    HvConfig hc;
    hc.normalize = ip.hv_normalize;
    if (hc.normalize) {
      hc.nadir = nadir;
      hc.reference_point = Vector(m, ip.hv_reference_scale);
    } else {
      hc.reference_point = margin_reference(front.points, 0.1);
    }
    hc.mc_samples = ip.hv_mc_samples;
    hc.seed = run_seed;
    const bool exact = metric == "hv" && m <= 4;
    return exact ? hv_exact(pop, hc).value : hv_monte_carlo(pop, hc).value;
  }
  if (metric == "entropy") {
    if (pop.has_jacobians()) return entropy_indicator(pop, ip.qp_tol).h_value;
    return entropy_indicator(pop, jacobian_for(spec), ip.qp_tol).h_value;
  }
  throw UsageError("unknown indicator '" + metric +
                   "' (expected igd, gd, igd_p, gd_p, delta_p, hv, hv_mc or entropy)");
}

}  // namespace

std::pair<double, double> summarize(const std::vector<double>& values) {
  if (values.empty()) throw UsageError("summarize: no values");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size());
  return {mean, std::sqrt(var)};
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.problems.empty()) throw UsageError("experiment config lists no problems");
  if (cfg.algorithms.empty()) throw UsageError("experiment config lists no algorithms");
  if (cfg.runs < 1) throw UsageError("experiment config: runs must be >= 1");
  if (cfg.indicators.metrics.empty())
    throw UsageError("experiment config lists no indicators");
  cfg.evolution.validate();

  const auto start = Clock::now();
  ExperimentResult result;
  for (const auto& pref : cfg.problems) {
    const ProblemSpec spec = make_problem(pref.name, pref.m, pref.n);
    const ReferenceFront front =
        sample_true_front(spec, cfg.reference_front_size, cfg.seed);
    const Vector nadir = nadir_of(front.points);

    for (const auto& aref : cfg.algorithms) {
      const std::string label = aref.label.empty() ? aref.kind : aref.label;
      std::vector<std::vector<double>> raw(cfg.indicators.metrics.size());
      for (int j = 0; j < cfg.runs; ++j) {
        const std::uint64_t run_seed = cfg.seed + static_cast<std::uint64_t>(j);
        Population pop;
        if (aref.kind == "nsga2" || aref.kind == "random") {
          EvolutionConfig ecfg = cfg.evolution;
          ecfg.seed = run_seed;
          pop = aref.kind == "nsga2" ? nsga2_run(spec, ecfg).final_population
                                     : random_search_run(spec, ecfg).final_population;
        } else if (aref.kind == "csv") {
          if (aref.csv_path.empty())
            throw UsageError("algorithm '" + label + "': csv kind needs csv_path");
          pop = read_population_csv(replace_run_token(aref.csv_path, j + 1));
          if (pop.objective_count() != static_cast<std::size_t>(spec.m))
            throw DataError("algorithm '" + label + "' run " + std::to_string(j + 1) +
                            ": population has " + std::to_string(pop.objective_count()) +
                            " objectives but " + spec.name + " has " +
                            std::to_string(spec.m));
        } else {
          throw UsageError("unknown algorithm kind '" + aref.kind +
                           "' (expected nsga2, random or csv)");
        }
        for (std::size_t mi = 0; mi < cfg.indicators.metrics.size(); ++mi)
          raw[mi].push_back(run_algorithm_metric(cfg.indicators.metrics[mi], pop, front,
                                                 nadir, spec, cfg.indicators, run_seed));
      }
      for (std::size_t mi = 0; mi < cfg.indicators.metrics.size(); ++mi) {
        ExperimentCell cell;
        cell.problem = spec.name;
        cell.algorithm = label;
        cell.indicator = cfg.indicators.metrics[mi];
        auto [mean, stddev] = summarize(raw[mi]);
        cell.mean = mean;
        cell.stddev = stddev;
        cell.raw = std::move(raw[mi]);
        result.cells.push_back(std::move(cell));
      }
    }
  }
  result.wall_seconds = seconds_since(start);
  return result;
}

void write_experiment_csv(const ExperimentResult& result, const std::string& dir) {
  {
    std::ofstream out(dir + "/summary.csv");
    if (!out) throw DataError("cannot write " + dir + "/summary.csv");
    out << "problem,algorithm,indicator,mean,std\n";
    for (const auto& c : result.cells)
      out << c.problem << ',' << c.algorithm << ',' << c.indicator << ','
          << format_full(c.mean) << ',' << format_full(c.stddev) << '\n';
  }
  std::ofstream out(dir + "/raw.csv");
  if (!out) throw DataError("cannot write " + dir + "/raw.csv");
  out << "problem,algorithm,indicator,run,value\n";
  for (const auto& c : result.cells)
    for (std::size_t j = 0; j < c.raw.size(); ++j)
      out << c.problem << ',' << c.algorithm << ',' << c.indicator << ',' << j + 1 << ','
          << format_full(c.raw[j]) << '\n';
}

namespace {

struct TimedSet {
  Population pop;
  std::vector<Vector> objectives;
  ReferenceFront front;
};

TimedSet make_timed_set(const ProblemSpec& spec, int pop_size, std::size_t front_size,
                        std::uint64_t seed) {
  TimedSet set;
  Rng rng(seed);
  set.pop = random_population(spec, pop_size, rng);
  set.objectives = objectives_of(set.pop);
  set.front = sample_true_front(spec, front_size, seed);
  return set;
}

/// Times one indicator triple over a prepared set; returns rows in the fixed
/// order delta_p, hv, entropy.
std::vector<TimingRow> time_triple(const TimedSet& set, int size_label, int reps,
                                   std::size_t mc_samples, double qp_tol,
                                   bool hv_exact_ok, std::uint64_t seed) {
  volatile double sink = 0.0;
  HvConfig hc;
  hc.reference_point = margin_reference(set.objectives, 0.1);
  hc.mc_samples = mc_samples;
  hc.seed = seed;

  std::vector<double> t_delta, t_hv, t_entropy;
  for (int r = 0; r < reps; ++r) {
    auto t0 = Clock::now();
    sink = sink + delta_p(set.objectives, set.front.points, 2.0);
    t_delta.push_back(seconds_since(t0));

    t0 = Clock::now();
    sink = sink + (hv_exact_ok ? hv_exact(set.objectives, hc).value
                               : hv_monte_carlo(set.objectives, hc).value);
    t_hv.push_back(seconds_since(t0));

    t0 = Clock::now();
    sink = sink + entropy_indicator(set.pop, qp_tol).h_value;
    t_entropy.push_back(seconds_since(t0));
  }
  (void)sink;

  const double md = median_of(t_delta);
  const double mh = median_of(t_entropy);
  const bool flag = md > mh;  // delta_p is expected to be the cheaper of the two
  return {{"delta_p", size_label, md, reps, flag},
          {"hv", size_label, median_of(t_hv), reps, flag},
          {"entropy", size_label, mh, reps, flag}};
}

}  // namespace

std::vector<TimingRow> timing_study_popsize(const TimingConfig& cfg) {
  if (cfg.reps < 1) throw UsageError("timing config: reps must be >= 1");
  const ProblemSpec spec = make_problem(cfg.problem, 3);
  std::vector<TimingRow> rows;
  for (int k : cfg.sizes) {
    if (k < 1) throw UsageError("timing config: population sizes must be >= 1");
    const TimedSet set = make_timed_set(spec, k, static_cast<std::size_t>(4) * k,
                                        cfg.seed + static_cast<std::uint64_t>(k));
    auto triple =
        time_triple(set, k, cfg.reps, cfg.mc_samples, cfg.qp_tol, spec.m <= 4, cfg.seed);
    rows.insert(rows.end(), triple.begin(), triple.end());
  }
  return rows;
}

std::vector<TimingRow> timing_study_objectives(const TimingConfig& cfg) {
  if (cfg.reps < 1) throw UsageError("timing config: reps must be >= 1");
  std::vector<TimingRow> rows;
  for (int m : cfg.objective_counts) {
    const ProblemSpec spec = make_problem(cfg.problem, m);
    const TimedSet set =
        make_timed_set(spec, 50 * m, static_cast<std::size_t>(100) * m,
                       cfg.seed + static_cast<std::uint64_t>(m));
    auto triple =
        time_triple(set, m, cfg.reps, cfg.mc_samples, cfg.qp_tol, m <= 4, cfg.seed);
    rows.insert(rows.end(), triple.begin(), triple.end());
  }
  return rows;
}

void write_timing_csv(const std::vector<TimingRow>& rows, const std::string& path,
                      const std::string& size_column) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << "indicator," << size_column << ",median_seconds,reps,ordering_flag\n";
  for (const auto& r : rows)
    out << r.indicator << ',' << r.size << ',' << format_full(r.median_seconds) << ','
        << r.reps << ',' << (r.ordering_flag ? 1 : 0) << '\n';
}

std::vector<TracePoint> convergence_trace(const TraceConfig& cfg) {
  const ProblemSpec spec = make_problem(cfg.problem, cfg.m, cfg.n);
  RunResult run;
  if (cfg.algorithm == "nsga2")
    run = nsga2_run(spec, cfg.evolution);
  else if (cfg.algorithm == "random")
    run = random_search_run(spec, cfg.evolution);
  else
    throw UsageError("unknown algorithm '" + cfg.algorithm +
                     "' (expected nsga2 or random)");

  if (cfg.front_size == 0) return trace_from_snapshots(run.snapshots, spec, cfg.qp_tol, nullptr);
  const ReferenceFront front = sample_true_front(spec, cfg.front_size, cfg.front_seed);
  return trace_from_snapshots(run.snapshots, spec, cfg.qp_tol, &front);
}

std::vector<TracePoint> trace_from_snapshots(const std::vector<Population>& snapshots,
                                             const ProblemSpec& problem, double qp_tol,
                                             const ReferenceFront* front) {
  std::vector<TracePoint> points;
  points.reserve(snapshots.size());
  const JacobianFn jfn = jacobian_for(problem);
  long long evaluations = 0;
  for (std::size_t g = 0; g < snapshots.size(); ++g) {
    const Population nd = non_dominated_filter(snapshots[g]);
    evaluations += static_cast<long long>(snapshots[g].size());
    TracePoint tp;
    tp.generation = static_cast<int>(g);
    tp.evaluations = evaluations;
    tp.h = nd.has_jacobians() ? entropy_indicator(nd, qp_tol).h_value
                              : entropy_indicator(nd, jfn, qp_tol).h_value;
    tp.igd_value =
        front ? igd(nd, *front) : std::numeric_limits<double>::quiet_NaN();
    points.push_back(tp);
  }
  return points;
}

void write_trace_csv(const std::vector<TracePoint>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  const bool with_igd = !rows.empty() && !std::isnan(rows.front().igd_value);
  out << (with_igd ? "generation,evaluations,h,igd\n" : "generation,evaluations,h\n");
  for (const auto& r : rows) {
    out << r.generation << ',' << r.evaluations << ',' << format_full(r.h);
    if (with_igd) out << ',' << format_full(r.igd_value);
    out << '\n';
  }
}

}  // namespace moqi
