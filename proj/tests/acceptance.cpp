// End-to-end acceptance checks for the indicator toolkit. Each check prints
// exactly one [PASS]/[FAIL] line (with its wall time and budget); the binary
// exits nonzero if any check fails. The checks exercise the public API the
// way the tool is meant to be used: randomized stress inputs, independent
// brute-force oracles, optimizer-in-the-loop trend tests and timing shape.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "moqi/core.hpp"
#include "moqi/harness.hpp"
#include "moqi/indicators.hpp"
#include "moqi/moea.hpp"
#include "moqi/problems.hpp"
#include "moqi/rng.hpp"
#include "moqi/simplex_qp.hpp"
#include "test_util.hpp"

using namespace moqi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Matrix random_jacobian(int m, int n, Rng& rng, double scale) {
  Matrix jac;
  jac.rows = static_cast<std::size_t>(m);
  jac.cols = static_cast<std::size_t>(n);
  jac.data.resize(jac.rows * jac.cols);
  for (auto& v : jac.data) v = rng.normal() * scale;
  return jac;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. The entropy value of any population lies in [0, (1/2)log2(e)/e], and the
//    ceiling is reached exactly when every stationarity residual clamps.

bool check_entropy_range(std::string& detail) {
  Rng rng(101);
  const double bound = h_upper_bound();
  double h_min = 1e300;
  double h_max = -1e300;
  for (int t = 0; t < 1000; ++t) {
    const int m = 2 + static_cast<int>(rng.index(4));  // 2..5 objectives
    const int n = m + static_cast<int>(rng.index(9));
    const int k = 2 + static_cast<int>(rng.index(9));
    const double scale = std::pow(10.0, rng.uniform() * 6.0 - 3.0);
    Population pop;
    for (int i = 0; i < k; ++i) {
      Individual ind;
      ind.objectives = Vector(static_cast<std::size_t>(m), 0.0);
      ind.jacobian = random_jacobian(m, n, rng, scale);
      pop.members.push_back(std::move(ind));
    }
    const double h = entropy_indicator(pop).h_value;
    h_min = std::min(h_min, h);
    h_max = std::max(h_max, h);
    if (!(h >= 0.0) || !(h <= bound + 1e-12)) {
      detail = "H=" + fmt(h) + " escaped [0, " + fmt(bound) + "] at trial " +
               std::to_string(t);
      return false;
    }
  }

  // Ceiling attainment: rows are orthogonal with squared norm 2, so the
  // minimal convex-combination residual is 2/m >= 1/e for m <= 5 and every
  // term clamps.
  double worst_gap = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int m = 2 + static_cast<int>(rng.index(4));
    const int n = m + static_cast<int>(rng.index(5));
    const int k = 1 + static_cast<int>(rng.index(8));
    Population pop;
    for (int i = 0; i < k; ++i) {
      Matrix jac;
      jac.rows = static_cast<std::size_t>(m);
      jac.cols = static_cast<std::size_t>(n);
      jac.data.assign(jac.rows * jac.cols, 0.0);
      for (int r = 0; r < m; ++r)
        jac(static_cast<std::size_t>(r), static_cast<std::size_t>(r)) =
            (rng.uniform() < 0.5 ? -1.0 : 1.0) * std::sqrt(2.0);
      Individual ind;
      ind.objectives = Vector(static_cast<std::size_t>(m), 0.0);
      ind.jacobian = std::move(jac);
      pop.members.push_back(std::move(ind));
    }
    worst_gap = std::max(worst_gap, std::abs(entropy_indicator(pop).h_value - bound));
  }
  detail = "H in [" + fmt(h_min) + ", " + fmt(h_max) + "], ceiling gap " +
           fmt(worst_gap);
  return worst_gap <= 1e-12;
}

// ---------------------------------------------------------------------------
// 2. Sampled dtlz2 optima have vanishing residuals and near-zero H; a uniform
//    random population scores high.

bool check_stationary_vs_random(std::string& detail) {
  const ProblemSpec spec = make_problem("dtlz2");
  Rng rng(202);
  Population optima;
  double max_residual = 0.0;
  for (int i = 0; i < 100; ++i) {
    Vector x(static_cast<std::size_t>(spec.n), 0.5);
    for (int j = 0; j + 1 < spec.m; ++j)
      x[static_cast<std::size_t>(j)] = 0.05 + 0.9 * rng.uniform();
    Individual ind;
    ind.objectives = evaluate(spec, x);
    ind.jacobian = jacobian(spec, x);
    ind.decision = std::move(x);
    max_residual = std::max(max_residual, q_norm_sq(*ind.jacobian));
    optima.members.push_back(std::move(ind));
  }
  const double h_front = entropy_indicator(optima).h_value;

  Population random_pop;
  for (int i = 0; i < 100; ++i) {
    Vector x(static_cast<std::size_t>(spec.n));
    for (auto& xj : x) xj = rng.uniform();
    Individual ind;
    ind.objectives = evaluate(spec, x);
    ind.jacobian = jacobian(spec, x);
    ind.decision = std::move(x);
    random_pop.members.push_back(std::move(ind));
  }
  const double h_random = entropy_indicator(random_pop).h_value;

  detail = "max residual " + fmt(max_residual) + ", H(optima) " + fmt(h_front) +
           ", H(random) " + fmt(h_random);
  return max_residual <= 1e-10 && h_front <= 1e-6 && h_random >= 0.2;
}

// ---------------------------------------------------------------------------
// 3. The projected-gradient QP matches the two-gradient closed form and a
//    brute-force simplex grid search.

bool check_qp_oracles(std::string& detail) {
  Rng rng(303);
  double worst2 = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + static_cast<int>(rng.index(7));
    const double scale = std::pow(10.0, rng.uniform() * 2.0 - 1.0);
    const Matrix jac = random_jacobian(2, n, rng, scale);
    const QpSolution pg = solve_simplex_qp(gram(jac));
    const QpSolution cf = closed_form_m2(Vector(jac.row(0)), Vector(jac.row(1)));
    worst2 = std::max(worst2, std::abs(pg.residual_norm_sq - cf.residual_norm_sq));
  }

  double worst34 = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int m = 3 + (t % 2);
    const int n = m + static_cast<int>(rng.index(6));
    const Matrix g = gram(random_jacobian(m, n, rng, 1.0));
    const double pg = solve_simplex_qp(g).residual_norm_sq;
    const double grid =
        testutil::grid_search_simplex_value(g, m == 3 ? 1e-3 : 1e-2, 1e-5);
    worst34 = std::max(worst34, std::abs(pg - grid));
  }

  detail = "worst |pg-closed| " + fmt(worst2) + " (tol 1e-10), worst |pg-grid| " +
           fmt(worst34) + " (tol 1e-6)";
  return worst2 <= 1e-10 && worst34 <= 1e-6;
}

// ---------------------------------------------------------------------------
// 4. The distance-indicator identities hold bit for bit on random set pairs.

bool check_distance_identities(std::string& detail) {
  Rng rng(404);
  for (int t = 0; t < 100; ++t) {
    const int dim = 2 + static_cast<int>(rng.index(3));
    const auto v = testutil::random_points(3 + rng.index(18), dim, rng);
    const auto l = testutil::random_points(3 + rng.index(18), dim, rng);
    const double p = 1.0 + rng.uniform() * 3.0;
    const double r = static_cast<double>(l.size());
    if (gd(v, l) != igd(l, v)) {
      detail = "gd(V,L) != igd(L,V) at trial " + std::to_string(t);
      return false;
    }
    if (delta_p(v, l, p) != std::max(igd_p(v, l, p), gd_p(v, l, p))) {
      detail = "delta_p != max(igd_p, gd_p) at trial " + std::to_string(t);
      return false;
    }
    if (igd(v, l) != igd_p(v, l, 2.0) / std::sqrt(r)) {
      detail = "igd != igd_p(2)/sqrt(r) at trial " + std::to_string(t);
      return false;
    }
    if (delta_p(v, v, p) != 0.0) {
      detail = "delta_p(A,A) != 0 at trial " + std::to_string(t);
      return false;
    }
  }
  detail = "all four identities bit-exact on 100 pairs";
  return true;
}

// ---------------------------------------------------------------------------
// 5. Exact hypervolume equals subset inclusion-exclusion; the Monte Carlo
//    estimator's reported standard error is calibrated.

bool check_hypervolume_oracles(std::string& detail) {
  Rng rng(505);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int m = 2 + static_cast<int>(rng.index(2));
    const auto pts = testutil::random_points(1 + rng.index(8), m, rng);
    HvConfig cfg;
    cfg.reference_point = Vector(static_cast<std::size_t>(m), 1.1);
    const double exact = hv_exact(pts, cfg).value;
    const double oracle = testutil::inclusion_exclusion_hv(pts, cfg.reference_point);
    worst = std::max(worst, std::abs(exact - oracle));
  }

  int hits = 0;
  for (int t = 0; t < 100; ++t) {
    const int m = 2 + static_cast<int>(rng.index(2));
    const auto pts = testutil::random_points(1 + rng.index(8), m, rng);
    HvConfig cfg;
    cfg.reference_point = Vector(static_cast<std::size_t>(m), 1.1);
    cfg.mc_samples = 100000;
    cfg.seed = 9000 + static_cast<std::uint64_t>(t);
    const double exact = hv_exact(pts, cfg).value;
    const HvResult mc = hv_monte_carlo(pts, cfg);
    if (std::abs(mc.value - exact) <= 3.0 * mc.std_error) ++hits;
  }

  detail = "worst |exact-oracle| " + fmt(worst) + " (tol 1e-9), Monte Carlo within 3 SE in " +
           std::to_string(hits) + "/100 trials (need >= 95)";
  return worst <= 1e-9 && hits >= 95;
}

// ---------------------------------------------------------------------------
// 6. Analytic Jacobians of all five problems agree with central finite
//    differences at random interior points.

bool check_jacobians(std::string& detail) {
  Rng rng(606);
  double worst = 0.0;
  std::string worst_problem;
  for (const auto& name : problem_names()) {
    const ProblemSpec spec = make_problem(name);
    for (int t = 0; t < 100; ++t) {
      Vector x(static_cast<std::size_t>(spec.n));
      for (std::size_t j = 0; j < x.size(); ++j) {
        const double lo = spec.bounds.lower[j];
        const double hi = spec.bounds.upper[j];
        x[j] = lo + (0.01 + 0.98 * rng.uniform()) * (hi - lo);
      }
      const Matrix exact = jacobian(spec, x);
      const Matrix fd = finite_diff_jacobian(spec, x, 1e-6).jac;
      for (std::size_t i = 0; i < exact.data.size(); ++i) {
        const double diff = std::abs(exact.data[i] - fd.data[i]);
        if (diff > worst) {
          worst = diff;
          worst_problem = name;
        }
      }
    }
  }
  detail = "worst |analytic-fd| " + fmt(worst) + " on " + worst_problem +
           " (tol 1e-4)";
  return worst <= 1e-4;
}

// ---------------------------------------------------------------------------
// 7. H falls as nsga2 converges on zdt2: the median over the last tenth of
//    the generations is below the median over the first tenth.

bool check_entropy_decline(std::string& detail) {
  const ProblemSpec spec = make_problem("zdt2", 0, 100);
  int wins = 0;
  std::string per_seed;
  for (int seed = 1; seed <= 5; ++seed) {
    EvolutionConfig cfg;
    cfg.pop_size = 100;
    cfg.max_evaluations = 10000;
    cfg.seed = static_cast<std::uint64_t>(seed);
    const RunResult run = nsga2_run(spec, cfg);
    const auto rows = trace_from_snapshots(run.snapshots, spec, 1e-12, nullptr);
    const std::size_t tenth = rows.size() / 10;
    std::vector<double> first, last;
    for (std::size_t i = 0; i < tenth; ++i) first.push_back(rows[i].h);
    for (std::size_t i = rows.size() - tenth; i < rows.size(); ++i)
      last.push_back(rows[i].h);
    const double m_first = testutil::median(first);
    const double m_last = testutil::median(last);
    if (m_last < m_first) ++wins;
    if (!per_seed.empty()) per_seed += " ";
    per_seed += fmt(m_first) + "->" + fmt(m_last);
  }
  detail = "declines in " + std::to_string(wins) + "/5 seeds (need >= 4): " + per_seed;
  return wins >= 4;
}

// ---------------------------------------------------------------------------
// 8. With matched seeds, nsga2 beats random search simultaneously on delta_2
//    (lower), hypervolume (higher) and H (lower) on dtlz1/2/5.

bool check_algorithm_ordering(std::string& detail) {
  ExperimentConfig cfg;
  cfg.problems = {{"dtlz1", 0, 0}, {"dtlz2", 0, 0}, {"dtlz5", 0, 0}};
  cfg.algorithms = {{"nsga2", "", ""}, {"random", "", ""}};
  cfg.runs = 5;
  cfg.seed = 1;
  cfg.evolution.pop_size = 100;
  // dtlz1's rugged distance landscape needs a deep run before the population
  // actually reaches the front (and its residuals fall below the entropy
  // clamp); 2e5 evaluations converges all three problems in ~1 s per run.
  cfg.evolution.max_evaluations = 200000;
  cfg.indicators.metrics = {"delta_p", "hv", "entropy"};
  cfg.reference_front_size = 1000;
  const ExperimentResult result = run_experiment(cfg);

  const auto raw = [&](const std::string& problem, const std::string& algo,
                       const std::string& indicator) -> const std::vector<double>& {
    for (const auto& c : result.cells)
      if (c.problem == problem && c.algorithm == algo && c.indicator == indicator)
        return c.raw;
    throw UsageError("missing cell " + problem + "/" + algo + "/" + indicator);
  };

  bool ok = true;
  detail.clear();
  for (const auto& pref : cfg.problems) {
    const auto& d2_n = raw(pref.name, "nsga2", "delta_p");
    const auto& d2_r = raw(pref.name, "random", "delta_p");
    const auto& hv_n = raw(pref.name, "nsga2", "hv");
    const auto& hv_r = raw(pref.name, "random", "hv");
    const auto& h_n = raw(pref.name, "nsga2", "entropy");
    const auto& h_r = raw(pref.name, "random", "entropy");
    int wins = 0;
    for (int j = 0; j < cfg.runs; ++j)
      if (d2_n[static_cast<std::size_t>(j)] < d2_r[static_cast<std::size_t>(j)] &&
          hv_n[static_cast<std::size_t>(j)] > hv_r[static_cast<std::size_t>(j)] &&
          h_n[static_cast<std::size_t>(j)] < h_r[static_cast<std::size_t>(j)])
        ++wins;
    if (!detail.empty()) detail += ", ";
    detail += pref.name + " " + std::to_string(wins) + "/5";
    ok = ok && wins >= 4;
  }
  detail += " paired sweeps (need >= 4 each)";
  return ok;
}

// ---------------------------------------------------------------------------
// 9. H wall time grows linearly with population size, and both timing tables
//    are written to disk.

bool check_timing_shape(std::string& detail) {
  TimingConfig cfg;  // sizes {100,...,1600}, objective counts {2,...,10}
  const auto by_size = timing_study_popsize(cfg);
  const auto by_m = timing_study_objectives(cfg);

  const std::string dir = "acceptance_artifacts";
  std::filesystem::create_directories(dir);
  write_timing_csv(by_size, dir + "/timing_popsize.csv", "k");
  write_timing_csv(by_m, dir + "/timing_objectives.csv", "m");

  std::vector<double> xs, ys;
  for (int size : cfg.sizes) {
    for (const auto& row : by_size)
      if (row.indicator == "entropy" && row.size == size) {
        xs.push_back(static_cast<double>(size));
        ys.push_back(row.median_seconds);
      }
  }
  if (xs.size() != cfg.sizes.size()) {
    detail = "missing entropy timing rows";
    return false;
  }
  const double r2 = testutil::linear_fit_r2(xs, ys);
  detail = "H time vs k linear fit R^2 " + fmt(r2) + " (need >= 0.9); tables in " + dir;
  return r2 >= 0.9;
}

// ---------------------------------------------------------------------------
// 10. Randomized search over small multisets finds a delta_1 triangle
//     violation quickly.

bool check_triangle_violation(std::string& detail) {
  Rng rng(1010);
  const auto random_set = [&rng]() {
    const std::size_t size = 1 + rng.index(4);
    std::vector<Vector> pts(size);
    for (auto& p : pts)
      p = {0.5 * static_cast<double>(rng.index(3)),
           0.5 * static_cast<double>(rng.index(3))};
    return pts;
  };
  for (int t = 1; t <= 100000; ++t) {
    const auto x = random_set();
    const auto y = random_set();
    const auto z = random_set();
    const double xz = delta_p(x, z, 1.0);
    const double xy = delta_p(x, y, 1.0);
    const double yz = delta_p(y, z, 1.0);
    if (xz > xy + yz + 1e-12) {
      detail = "violation at triple " + std::to_string(t) + ": " + fmt(xz) + " > " +
               fmt(xy) + " + " + fmt(yz);
      return true;
    }
  }
  detail = "no violation within 100000 random triples";
  return false;
}

// ---------------------------------------------------------------------------

struct Check {
  const char* name;
  double budget_seconds;
  std::function<bool(std::string&)> body;
};

}  // namespace

int main() {
  const std::vector<Check> checks = {
      {"entropy range and ceiling attainment", 10.0, check_entropy_range},
      {"entropy separates dtlz2 optima from random points", 5.0,
       check_stationary_vs_random},
      {"simplex QP matches closed form and grid search", 30.0, check_qp_oracles},
      {"distance-indicator identities are bit-exact", 5.0, check_distance_identities},
      {"hypervolume matches inclusion-exclusion; Monte Carlo calibrated", 60.0,
       check_hypervolume_oracles},
      {"analytic Jacobians match finite differences", 10.0, check_jacobians},
      {"entropy declines across nsga2 generations on zdt2", 120.0,
       check_entropy_decline},
      {"nsga2 beats random search on delta_2, hypervolume and entropy", 600.0,
       check_algorithm_ordering},
      {"entropy cost is linear in population size; timing tables written", 300.0,
       check_timing_shape},
      {"randomized search finds a delta_1 triangle violation", 60.0,
       check_triangle_violation},
  };

  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto t0 = Clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = checks[i].body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double elapsed = seconds_since(t0);
    const bool in_budget = elapsed < checks[i].budget_seconds;
    const bool pass = ok && in_budget;
    if (!pass) ++failures;
    std::printf("[%s] %2zu %s (%.2f s, budget %.0f s)%s%s\n", pass ? "PASS" : "FAIL",
                i + 1, checks[i].name, elapsed, checks[i].budget_seconds,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu acceptance checks passed\n", checks.size() - failures,
              checks.size());
  return failures == 0 ? 0 : 1;
}
