#ifndef MOQI_SIMPLEX_QP_HPP
#define MOQI_SIMPLEX_QP_HPP

#include "moqi/core.hpp"

namespace moqi {

/// Convex weights on the unit simplex: alpha_i >= 0, sum alpha_i = 1.
struct SimplexWeights {
  Vector alpha;
};

/// Result of minimizing alpha' G alpha over the unit simplex.
struct QpSolution {
  SimplexWeights weights;
  double residual_norm_sq = 0.0;  // objective value at the returned weights
  int iterations = 0;
  bool converged = false;
};

/// Gram matrix G = J * J' of the gradient rows (m x m, positive
/// semidefinite up to rounding). Throws UsageError on empty or non-finite
/// input.
Matrix gram(const Matrix& jac);

/// Euclidean projection of v onto the unit simplex (exact sort-based method).
Vector project_to_simplex(Vector v);

/// Minimize alpha' G alpha subject to alpha on the unit simplex, via
/// projected gradient with exact line search along each projected step.
///
/// Starts from the fixed center alpha = (1/m, ..., 1/m) unless initial is
/// non-empty. G is symmetrized as (G + G')/2 before solving. Convergence is
/// certified by the simplex first-order condition
///   min_i (G alpha)_i >= alpha' G alpha - tol,
/// which bounds the gap to the true minimum value by tol. converged=false
/// with the best iterate found is returned when max_iter is exhausted.
QpSolution solve_simplex_qp(const Matrix& gram_matrix, double tol = 1e-12,
                            int max_iter = 10000, const Vector& initial = {});

/// Exact two-gradient solution: for q(a) = ||a g1 + (1-a) g2||^2 the
/// unconstrained minimizer is <g2 - g1, g2> / ||g1 - g2||^2, clamped to
/// [0, 1]; a = 1/2 when g1 == g2. Weight order in the result is (a, 1-a).
QpSolution closed_form_m2(const Vector& g1, const Vector& g2);

/// Squared norm of the steepest-common-descent direction q = sum alpha_i
/// grad f_i at the optimal simplex weights. Zero exactly when the point
/// satisfies first-order stationarity for the unconstrained multi-objective
/// problem. Computed as ||J' alpha||^2 from the Jacobian itself, which is a
/// nonnegative sum of squares even at rounding scale.
double q_norm_sq(const Matrix& jac, double tol = 1e-12, int max_iter = 10000);

/// Whether q_norm_sq(jac) < eps. eps must be positive.
bool is_eps_closed(const Matrix& jac, double eps, double tol = 1e-12);

}  // namespace moqi

#endif  // MOQI_SIMPLEX_QP_HPP
