#ifndef MOQI_PROBLEMS_HPP
#define MOQI_PROBLEMS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "moqi/core.hpp"

namespace moqi {

enum class ProblemKind { Dtlz1, Dtlz2, Dtlz5, Dtlz7, Zdt2 };

/// A registered benchmark problem instance: objective count m, decision
/// dimension n and the box constraints (always [0,1]^n here).
struct ProblemSpec {
  std::string name;
  ProblemKind kind = ProblemKind::Dtlz2;
  int m = 0;
  int n = 0;
  Bounds bounds;
};

/// Registered problem names: dtlz1, dtlz2, dtlz5, dtlz7, zdt2.
const std::vector<std::string>& problem_names();

/// Build a problem instance. m = 0 and n = 0 select the registry defaults
/// (dtlz1: n = m + 4; dtlz2/5/7: n = m + 9; zdt2: m = 2, n = 30).
/// Throws UsageError for unknown names or inconsistent dimensions.
ProblemSpec make_problem(const std::string& name, int m = 0, int n = 0);

/// Objective vector at x. Throws UsageError when x has the wrong dimension
/// or leaves the bounds (reporting the offending index).
Vector evaluate(const ProblemSpec& p, const Vector& x);

/// Analytic Jacobian at x; row i is the gradient of objective i.
Matrix jacobian(const ProblemSpec& p, const Vector& x);

struct FdJacobian {
  Matrix jac;
  bool one_sided = false;  // true when a bound forced a one-sided difference
};

/// Central finite-difference Jacobian with step h, falling back to a
/// one-sided difference whenever x_j +/- h leaves the bounds. h must be
/// positive.
FdJacobian finite_diff_jacobian(const ProblemSpec& p, const Vector& x, double h);

/// Deterministic sample of the analytic Pareto front in objective space:
/// simplex (dtlz1), unit sphere octant (dtlz2), degenerate curve (dtlz5),
/// mixed disconnected front via rejection (dtlz7), f2 = 1 - f1^2 (zdt2).
/// Points are mutually non-dominated and exactly count many.
ReferenceFront sample_true_front(const ProblemSpec& p, std::size_t count,
                                 std::uint64_t seed);

}  // namespace moqi

#endif  // MOQI_PROBLEMS_HPP
