#include "moqi/simplex_qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace moqi {

namespace {

void check_finite(const Matrix& a, const char* what) {
  for (double v : a.data) {
    if (!std::isfinite(v)) throw UsageError(std::string(what) + " contains non-finite values");
  }
}

Vector matvec(const Matrix& g, const Vector& x) {
  Vector out(g.rows, 0.0);
  for (std::size_t i = 0; i < g.rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < g.cols; ++j) s += g(i, j) * x[j];
    out[i] = s;
  }
  return out;
}

double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

Matrix gram(const Matrix& jac) {
  if (jac.rows == 0 || jac.cols == 0) throw UsageError("gram needs a non-empty Jacobian");
  check_finite(jac, "Jacobian");
  Matrix g(jac.rows, jac.rows);
  for (std::size_t i = 0; i < jac.rows; ++i) {
    for (std::size_t j = i; j < jac.rows; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < jac.cols; ++c) s += jac(i, c) * jac(j, c);
      g(i, j) = s;
      g(j, i) = s;
    }
  }
  return g;
}

Vector project_to_simplex(Vector v) {
  const std::size_t m = v.size();
  if (m == 0) throw UsageError("cannot project an empty vector");
  Vector u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumsum = 0.0;
  double tau = 0.0;
  std::size_t rho = 0;
  for (std::size_t j = 0; j < m; ++j) {
    cumsum += u[j];
    const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) {
      rho = j + 1;
      tau = t;
    }
  }
  (void)rho;
  for (double& x : v) x = std::max(x - tau, 0.0);
  // Guard against rounding drift so downstream code can rely on the simplex
  // invariants exactly enough for certificates.
  double s = std::accumulate(v.begin(), v.end(), 0.0);
  if (s > 0.0 && std::abs(s - 1.0) > 1e-15) {
    for (double& x : v) x /= s;
  }
  return v;
}

QpSolution solve_simplex_qp(const Matrix& gram_matrix, double tol, int max_iter,
                            const Vector& initial) {
  if (gram_matrix.rows == 0 || gram_matrix.rows != gram_matrix.cols)
    throw UsageError("simplex QP needs a square Gram matrix");
  if (!(tol > 0.0)) throw UsageError("simplex QP tolerance must be positive");
  if (max_iter < 1) throw UsageError("simplex QP needs max_iter >= 1");
  check_finite(gram_matrix, "Gram matrix");

  const std::size_t m = gram_matrix.rows;
  Matrix g(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      g(i, j) = 0.5 * (gram_matrix(i, j) + gram_matrix(j, i));

  QpSolution sol;
  if (m == 1) {
    sol.weights.alpha = {1.0};
    sol.residual_norm_sq = std::max(g(0, 0), 0.0);
    sol.converged = true;
    return sol;
  }

  Vector alpha;
  if (initial.empty()) {
    alpha.assign(m, 1.0 / static_cast<double>(m));
  } else {
    if (initial.size() != m) throw UsageError("initial weights have wrong dimension");
    alpha = project_to_simplex(initial);
  }

  // Gershgorin bound on the spectral radius, used as the gradient step scale.
  double lip = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m; ++j) row += std::abs(g(i, j));
    lip = std::max(lip, row);
  }
  const double step = 1.0 / std::max(lip, std::numeric_limits<double>::min());

  Vector ga = matvec(g, alpha);
  double value = dot(alpha, ga);
  int it = 0;
  bool converged = false;
  for (; it < max_iter; ++it) {
    const double gap = value - *std::min_element(ga.begin(), ga.end());
    if (gap <= tol) {
      converged = true;
      break;
    }
    Vector target(m);
    for (std::size_t i = 0; i < m; ++i) target[i] = alpha[i] - step * ga[i];
    Vector beta = project_to_simplex(std::move(target));
    Vector d(m);
    for (std::size_t i = 0; i < m; ++i) d[i] = beta[i] - alpha[i];
    const Vector gd = matvec(g, d);
    const double dgd = dot(d, gd);
    // Directional derivative d'(g alpha). d sums to zero, so shifting ga by
    // the scalar `value` changes nothing mathematically but avoids the
    // catastrophic cancellation of the raw inner product near the optimum,
    // where ga is almost a constant vector.
    double agd = 0.0;
    for (std::size_t i = 0; i < m; ++i) agd += d[i] * (ga[i] - value);
    double t = 1.0;
    if (dgd > 0.0) t = std::clamp(-agd / dgd, 0.0, 1.0);
    if (!(t > 0.0)) break;  // no descent available along the projected step
    Vector next(m);
    for (std::size_t i = 0; i < m; ++i) next[i] = alpha[i] + t * d[i];
    next = project_to_simplex(std::move(next));
    if (next == alpha) break;  // floating-point fixed point
    alpha = std::move(next);
    ga = matvec(g, alpha);
    value = dot(alpha, ga);
  }

  sol.weights.alpha = std::move(alpha);
  sol.residual_norm_sq = std::max(value, 0.0);
  sol.iterations = it;
  sol.converged = converged;
  return sol;
}

QpSolution closed_form_m2(const Vector& g1, const Vector& g2) {
  if (g1.empty() || g1.size() != g2.size())
    throw UsageError("closed_form_m2 needs two equal-length gradients");
  double denom = 0.0;
  double numer = 0.0;
  for (std::size_t i = 0; i < g1.size(); ++i) {
    const double diff = g1[i] - g2[i];
    denom += diff * diff;
    numer += (g2[i] - g1[i]) * g2[i];
  }
  double a = 0.5;
  if (denom > 0.0) a = std::clamp(numer / denom, 0.0, 1.0);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < g1.size(); ++i) {
    const double q = a * g1[i] + (1.0 - a) * g2[i];
    norm2 += q * q;
  }
  QpSolution sol;
  sol.weights.alpha = {a, 1.0 - a};
  sol.residual_norm_sq = norm2;
  sol.iterations = 0;
  sol.converged = true;
  return sol;
}

double q_norm_sq(const Matrix& jac, double tol, int max_iter) {
  const QpSolution sol = solve_simplex_qp(gram(jac), tol, max_iter);
  const Vector& alpha = sol.weights.alpha;
  // Recompute the value as ||J' alpha||^2: a sum of squares stays
  // nonnegative and accurate even when the optimum is at rounding scale.
  double norm2 = 0.0;
  for (std::size_t c = 0; c < jac.cols; ++c) {
    double q = 0.0;
    for (std::size_t i = 0; i < jac.rows; ++i) q += alpha[i] * jac(i, c);
    norm2 += q * q;
  }
  return norm2;
}

bool is_eps_closed(const Matrix& jac, double eps, double tol) {
  if (!(eps > 0.0)) throw UsageError("eps must be positive");
  return q_norm_sq(jac, tol) < eps;
}

}  // namespace moqi
