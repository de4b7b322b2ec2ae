#include "moqi/moea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace moqi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Ranked {
  std::vector<std::size_t> rank;  // front index per member
  Vector crowding;                // crowding distance per member
};

Ranked rank_population(const std::vector<Vector>& objectives) {
  Ranked out;
  out.rank.assign(objectives.size(), 0);
  out.crowding.assign(objectives.size(), 0.0);
  const auto fronts = fast_nondominated_sort(objectives);
  for (std::size_t r = 0; r < fronts.size(); ++r) {
    std::vector<Vector> front_objs;
    front_objs.reserve(fronts[r].size());
    for (std::size_t i : fronts[r]) {
      out.rank[i] = r;
      front_objs.push_back(objectives[i]);
    }
    const Vector cd = crowding_distance(front_objs);
    for (std::size_t j = 0; j < fronts[r].size(); ++j)
      out.crowding[fronts[r][j]] = cd[j];
  }
  return out;
}

// Binary tournament on (rank asc, crowding desc); the first pick wins ties.
std::size_t tournament(const Ranked& ranked, Rng& rng) {
  const std::size_t a = rng.index(ranked.rank.size());
  const std::size_t b = rng.index(ranked.rank.size());
  if (ranked.rank[b] < ranked.rank[a]) return b;
  if (ranked.rank[a] == ranked.rank[b] && ranked.crowding[b] > ranked.crowding[a])
    return b;
  return a;
}

Individual make_individual(const ProblemSpec& problem, Vector x,
                           long long& evaluations) {
  Individual ind;
  ind.objectives = evaluate(problem, x);
  ind.decision = std::move(x);
  ++evaluations;
  return ind;
}

Vector random_point(const Bounds& bounds, Rng& rng) {
  Vector x(bounds.lower.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = rng.uniform(bounds.lower[i], bounds.upper[i]);
  return x;
}

// Environmental selection: whole fronts while they fit, then the best of the
// split front by crowding distance (stable towards lower index on ties).
std::vector<std::size_t> select_best(const std::vector<Vector>& objectives,
                                     std::size_t target) {
  const auto fronts = fast_nondominated_sort(objectives);
  std::vector<std::size_t> chosen;
  chosen.reserve(target);
  for (const auto& front : fronts) {
    if (chosen.size() + front.size() <= target) {
      chosen.insert(chosen.end(), front.begin(), front.end());
      if (chosen.size() == target) break;
      continue;
    }
    std::vector<Vector> front_objs;
    front_objs.reserve(front.size());
    for (std::size_t i : front) front_objs.push_back(objectives[i]);
    const Vector cd = crowding_distance(front_objs);
    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return cd[a] > cd[b]; });
    for (std::size_t j = 0; chosen.size() < target; ++j)
      chosen.push_back(front[order[j]]);
    break;
  }
  return chosen;
}

}  // namespace

void EvolutionConfig::validate() const {
  if (pop_size < 4 || pop_size % 2 != 0)
    throw UsageError("pop_size must be even and at least 4");
  if (max_evaluations < pop_size)
    throw UsageError("max_evaluations must cover at least one population");
  if (crossover_prob < 0.0 || crossover_prob > 1.0)
    throw UsageError("crossover_prob must lie in [0, 1]");
  if (mutation_prob > 1.0)
    throw UsageError("mutation_prob must lie in [0, 1] (or be negative for 1/n)");
  if (!(crossover_eta > 0.0) || !(mutation_eta > 0.0))
    throw UsageError("distribution indices must be positive");
}

std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    const std::vector<Vector>& objectives) {
  const std::size_t k = objectives.size();
  std::vector<std::vector<std::size_t>> dominated(k);
  std::vector<std::size_t> dom_count(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (dominates(objectives[i], objectives[j])) {
        dominated[i].push_back(j);
        ++dom_count[j];
      } else if (dominates(objectives[j], objectives[i])) {
        dominated[j].push_back(i);
        ++dom_count[i];
      }
    }
  }
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < k; ++i)
    if (dom_count[i] == 0) current.push_back(i);
  while (!current.empty()) {
    fronts.push_back(current);
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      for (std::size_t j : dominated[i]) {
        if (--dom_count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  return fronts;
}

std::vector<std::vector<std::size_t>> fast_nondominated_sort(const Population& pop) {
  return fast_nondominated_sort(objectives_of(pop));
}

Vector crowding_distance(const std::vector<Vector>& front_objectives) {
  const std::size_t k = front_objectives.size();
  Vector cd(k, 0.0);
  if (k == 0) return cd;
  if (k <= 2) {
    std::fill(cd.begin(), cd.end(), kInf);
    return cd;
  }
  const std::size_t m = front_objectives.front().size();
  std::vector<std::size_t> order(k);
  for (std::size_t obj = 0; obj < m; ++obj) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return front_objectives[a][obj] < front_objectives[b][obj];
    });
    const double lo = front_objectives[order.front()][obj];
    const double hi = front_objectives[order.back()][obj];
    cd[order.front()] = kInf;
    cd[order.back()] = kInf;
    if (hi == lo) continue;  // zero range: no interior contribution
    for (std::size_t j = 1; j + 1 < k; ++j) {
      const std::size_t i = order[j];
      if (cd[i] == kInf) continue;
      cd[i] += (front_objectives[order[j + 1]][obj] -
                front_objectives[order[j - 1]][obj]) /
               (hi - lo);
    }
  }
  return cd;
}

std::pair<Vector, Vector> sbx_crossover(const Vector& p1, const Vector& p2,
                                        const Bounds& bounds,
                                        const EvolutionConfig& cfg, Rng& rng) {
  if (p1.size() != p2.size() || p1.size() != bounds.lower.size())
    throw UsageError("crossover parents and bounds disagree in dimension");
  Vector c1 = p1;
  Vector c2 = p2;
  if (rng.uniform() <= cfg.crossover_prob) {
    for (std::size_t i = 0; i < p1.size(); ++i) {
      if (rng.uniform() > 0.5) continue;
      if (std::abs(p1[i] - p2[i]) < 1e-14) continue;
      const double u = rng.uniform();
      double beta;
      if (u <= 0.5)
        beta = std::pow(2.0 * u, 1.0 / (cfg.crossover_eta + 1.0));
      else
        beta = std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (cfg.crossover_eta + 1.0));
      const double a = 0.5 * ((1.0 + beta) * p1[i] + (1.0 - beta) * p2[i]);
      const double b = 0.5 * ((1.0 - beta) * p1[i] + (1.0 + beta) * p2[i]);
      c1[i] = std::clamp(a, bounds.lower[i], bounds.upper[i]);
      c2[i] = std::clamp(b, bounds.lower[i], bounds.upper[i]);
    }
  }
  return {std::move(c1), std::move(c2)};
}

Vector polynomial_mutation(const Vector& x, const Bounds& bounds,
                           const EvolutionConfig& cfg, Rng& rng) {
  if (x.size() != bounds.lower.size())
    throw UsageError("mutation point and bounds disagree in dimension");
  const double prob =
      cfg.mutation_prob < 0.0 ? 1.0 / static_cast<double>(x.size()) : cfg.mutation_prob;
  Vector y = x;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (rng.uniform() >= prob) continue;
    const double lo = bounds.lower[i];
    const double hi = bounds.upper[i];
    const double range = hi - lo;
    if (range <= 0.0) continue;
    const double u = rng.uniform();
    const double d1 = (y[i] - lo) / range;
    const double d2 = (hi - y[i]) / range;
    const double exp = 1.0 / (cfg.mutation_eta + 1.0);
    double dq;
    if (u < 0.5) {
      const double t = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, cfg.mutation_eta + 1.0);
      dq = std::pow(t, exp) - 1.0;
    } else {
      const double t =
          2.0 * (1.0 - u) + (2.0 * u - 1.0) * std::pow(1.0 - d2, cfg.mutation_eta + 1.0);
      dq = 1.0 - std::pow(t, exp);
    }
    y[i] = std::clamp(y[i] + dq * range, lo, hi);
  }
  return y;
}

RunResult nsga2_run(const ProblemSpec& problem, const EvolutionConfig& cfg) {
  cfg.validate();
  Rng master(cfg.seed);
  Rng init_rng = master.fork(0);
  Rng select_rng = master.fork(1);
  Rng cross_rng = master.fork(2);
  Rng mut_rng = master.fork(3);

  RunResult result;
  const std::size_t pop_size = static_cast<std::size_t>(cfg.pop_size);
  const long long generations =
      (cfg.max_evaluations + cfg.pop_size - 1) / cfg.pop_size;  // initial included

  Population pop;
  pop.problem_id = problem.name;
  for (std::size_t i = 0; i < pop_size; ++i)
    pop.members.push_back(
        make_individual(problem, random_point(problem.bounds, init_rng),
                        result.evaluations_used));
  result.snapshots.push_back(pop);

  for (long long gen = 1; gen < generations; ++gen) {
    const auto parent_objs = objectives_of(pop);
    const Ranked ranked = rank_population(parent_objs);

    std::vector<Individual> offspring;
    offspring.reserve(pop_size);
    while (offspring.size() < pop_size) {
      const Individual& pa = pop.members[tournament(ranked, select_rng)];
      const Individual& pb = pop.members[tournament(ranked, select_rng)];
      auto [c1, c2] = sbx_crossover(*pa.decision, *pb.decision, problem.bounds,
                                    cfg, cross_rng);
      c1 = polynomial_mutation(c1, problem.bounds, cfg, mut_rng);
      c2 = polynomial_mutation(c2, problem.bounds, cfg, mut_rng);
      offspring.push_back(make_individual(problem, std::move(c1),
                                          result.evaluations_used));
      if (offspring.size() < pop_size)
        offspring.push_back(make_individual(problem, std::move(c2),
                                            result.evaluations_used));
    }

    std::vector<Individual> combined = pop.members;
    combined.insert(combined.end(), std::make_move_iterator(offspring.begin()),
                    std::make_move_iterator(offspring.end()));
    std::vector<Vector> combined_objs;
    combined_objs.reserve(combined.size());
    for (const auto& ind : combined) combined_objs.push_back(ind.objectives);

    const auto chosen = select_best(combined_objs, pop_size);
    Population next;
    next.problem_id = problem.name;
    next.members.reserve(pop_size);
    for (std::size_t i : chosen) next.members.push_back(combined[i]);
    pop = std::move(next);
    result.snapshots.push_back(pop);
  }

  result.final_population = std::move(pop);
  return result;
}

RunResult random_search_run(const ProblemSpec& problem, const EvolutionConfig& cfg) {
  cfg.validate();
  Rng master(cfg.seed);
  Rng init_rng = master.fork(0);

  RunResult result;
  const std::size_t pop_size = static_cast<std::size_t>(cfg.pop_size);
  const long long batches =
      (cfg.max_evaluations + cfg.pop_size - 1) / cfg.pop_size;

  Population archive;
  archive.problem_id = problem.name;
  for (long long b = 0; b < batches; ++b) {
    for (std::size_t i = 0; i < pop_size; ++i)
      archive.members.push_back(
          make_individual(problem, random_point(problem.bounds, init_rng),
                          result.evaluations_used));
    archive = non_dominated_filter(archive);
    if (archive.size() > pop_size) {
      const Vector cd = crowding_distance(objectives_of(archive));
      std::vector<std::size_t> order(archive.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return cd[a] > cd[b]; });
      order.resize(pop_size);
      std::sort(order.begin(), order.end());  // keep original relative order
      Population trimmed;
      trimmed.problem_id = problem.name;
      trimmed.members.reserve(pop_size);
      for (std::size_t i : order) trimmed.members.push_back(archive.members[i]);
      archive = std::move(trimmed);
    }
    result.snapshots.push_back(archive);
  }

  result.final_population = std::move(archive);
  return result;
}

}  // namespace moqi
