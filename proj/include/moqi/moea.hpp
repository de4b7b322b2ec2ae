#ifndef MOQI_MOEA_HPP
#define MOQI_MOEA_HPP

#include <cstdint>
#include <utility>

#include "moqi/core.hpp"
#include "moqi/problems.hpp"
#include "moqi/rng.hpp"

namespace moqi {

struct EvolutionConfig {
  int pop_size = 100;
  long long max_evaluations = 25000;
  double crossover_prob = 0.9;
  double crossover_eta = 20.0;
  double mutation_prob = -1.0;  // negative selects the 1/n default at runtime
  double mutation_eta = 20.0;
  std::uint64_t seed = 1;

  /// Throws UsageError on invalid settings (pop_size must be even and >= 4,
  /// budget must cover one population, probabilities in [0, 1]).
  void validate() const;
};

/// Non-dominated sorting: fronts[0] holds indices of non-dominated members,
/// fronts[r] those dominated only by earlier fronts. Indices ascend within
/// each front.
std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    const std::vector<Vector>& objectives);
std::vector<std::vector<std::size_t>> fast_nondominated_sort(const Population& pop);

/// Crowding distances for one front. Boundary members per objective get
/// +infinity; interior members accumulate normalized neighbor gaps; an
/// objective with zero range contributes nothing.
Vector crowding_distance(const std::vector<Vector>& front_objectives);

/// Simulated binary crossover. Children are the parents untouched with
/// probability 1 - crossover_prob; otherwise per-variable recombination with
/// distribution index crossover_eta, clamped into the bounds afterwards.
std::pair<Vector, Vector> sbx_crossover(const Vector& p1, const Vector& p2,
                                        const Bounds& bounds,
                                        const EvolutionConfig& cfg, Rng& rng);

/// Polynomial mutation with distribution index mutation_eta; each variable
/// mutates with probability mutation_prob (1/n if the config leaves it
/// negative), clamped into the bounds.
Vector polynomial_mutation(const Vector& x, const Bounds& bounds,
                           const EvolutionConfig& cfg, Rng& rng);

struct RunResult {
  Population final_population;
  std::vector<Population> snapshots;  // one per generation, initial included
  long long evaluations_used = 0;
};

/// Elitist NSGA-II: binary tournament on (rank, crowding), SBX, polynomial
/// mutation, environmental selection from parents plus offspring. Runs
/// ceil(max_evaluations / pop_size) generations (the initial population
/// counts as one) and records a snapshot after each. Deterministic for a
/// fixed seed; per-operator RNG streams are forked from it (see Rng::fork).
RunResult nsga2_run(const ProblemSpec& problem, const EvolutionConfig& cfg);

/// Uniform random sampling with the same budget accounting: each batch of
/// pop_size fresh points is merged into a non-dominated archive truncated to
/// pop_size by crowding distance.
RunResult random_search_run(const ProblemSpec& problem, const EvolutionConfig& cfg);

}  // namespace moqi

#endif  // MOQI_MOEA_HPP
