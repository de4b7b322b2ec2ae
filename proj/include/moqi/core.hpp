#ifndef MOQI_CORE_HPP
#define MOQI_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace moqi {

/// Caller misuse: bad arguments, malformed configuration. Maps to CLI exit code 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Bad data at runtime: unreadable files, inconsistent rows. Maps to CLI exit code 1.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Vector = std::vector<double>;

/// Dense row-major matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  /// Row i as a copy.
  Vector row(std::size_t i) const {
    return Vector(data.begin() + static_cast<std::ptrdiff_t>(i * cols),
                  data.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols));
  }
};

/// Closed per-coordinate box [lower_i, upper_i].
struct Bounds {
  Vector lower;
  Vector upper;

  bool contains(const Vector& x) const;
};

/// One candidate solution. Decision vector and Jacobian are optional so that
/// objective-space-only data (e.g. CSV imports) still flows through the
/// indicators that do not need them. jacobian row i is the gradient of
/// objective i.
struct Individual {
  std::optional<Vector> decision;
  Vector objectives;
  std::optional<Matrix> jacobian;
};

/// A set of individuals with uniform dimensions. problem_id optionally names a
/// registered benchmark problem so Jacobians can be computed on demand.
struct Population {
  std::vector<Individual> members;
  std::string problem_id;

  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
  std::size_t objective_count() const;
  bool has_decisions() const;
  bool has_jacobians() const;

  /// Throws UsageError if empty or dimensions are not uniform.
  void validate() const;
};

/// Discretized true Pareto front used as the reference set for indicators.
struct ReferenceFront {
  std::vector<Vector> points;

  std::size_t size() const { return points.size(); }
};

/// Pareto dominance: u dominates v iff u_i <= v_i for all i and u != v.
/// Comparisons are exact; no epsilon is applied. Throws UsageError on
/// dimension mismatch.
bool dominates(const Vector& u, const Vector& v);

/// Indices (in input order) of points not dominated by any other point.
/// Duplicates are mutually non-dominating and are all retained.
std::vector<std::size_t> non_dominated_indices(const std::vector<Vector>& points);

/// Members of pop whose objectives are non-dominated within pop, original
/// order preserved. Throws UsageError if pop is empty.
Population non_dominated_filter(const Population& pop);

/// Euclidean distance from y to the nearest point of a non-empty set.
double min_distance(const Vector& y, const std::vector<Vector>& points);

/// Objective vectors of all members, in order.
std::vector<Vector> objectives_of(const Population& pop);

}  // namespace moqi

#endif  // MOQI_CORE_HPP
