#ifndef MOQI_INDICATORS_HPP
#define MOQI_INDICATORS_HPP

#include <cstdint>
#include <functional>

#include "moqi/core.hpp"

namespace moqi {

/// Inverted generational distance of approximation set V against reference
/// set L: (1/r) * sqrt(sum of squared nearest distances), averaging over the
/// r reference points with the root taken before dividing.
double igd(const std::vector<Vector>& approx, const std::vector<Vector>& reference);
double igd(const Population& approx, const ReferenceFront& reference);

/// Generational distance: igd with the roles of the two sets swapped.
double gd(const std::vector<Vector>& approx, const std::vector<Vector>& reference);
double gd(const Population& approx, const ReferenceFront& reference);

/// Power-mean variant: ((1/r) * sum d^p)^(1/p), with the averaging inside
/// the root. p must be >= 1.
double igd_p(const std::vector<Vector>& approx, const std::vector<Vector>& reference,
             double p);
double igd_p(const Population& approx, const ReferenceFront& reference, double p);

double gd_p(const std::vector<Vector>& approx, const std::vector<Vector>& reference,
            double p);
double gd_p(const Population& approx, const ReferenceFront& reference, double p);

/// Averaged Hausdorff distance: max(igd_p(a, b, p), igd_p(b, a, p)).
/// Symmetric in its two sets; a semi-metric only (the triangle inequality
/// can fail).
double delta_p(const std::vector<Vector>& a, const std::vector<Vector>& b, double p);
double delta_p(const Population& a, const ReferenceFront& b, double p);

/// Hypervolume configuration. reference_point lives in the same space the
/// points are measured in: when normalize is true every objective vector is
/// divided componentwise by nadir first and reference_point refers to the
/// normalized space (typically 1.1 per coordinate).
struct HvConfig {
  Vector reference_point;
  bool normalize = false;
  Vector nadir;
  std::size_t mc_samples = 100000;
  std::uint64_t seed = 0;
};

struct HvResult {
  double value = 0.0;
  double std_error = 0.0;      // 0 for the exact algorithm
  std::size_t discarded = 0;   // points beyond the reference point
  std::size_t samples = 0;     // Monte Carlo samples drawn
  bool degenerate = false;     // Monte Carlo sampling box had no volume
};

/// Exact hypervolume for 2 to 4 objectives (sweep in 2-D, recursive slicing
/// above). Points beyond the reference point are discarded and counted.
HvResult hv_exact(const std::vector<Vector>& points, const HvConfig& cfg);
HvResult hv_exact(const Population& pop, const HvConfig& cfg);

/// Monte Carlo hypervolume estimate for any objective count: uniform
/// sampling over the box [componentwise min, reference], reporting the
/// binomial standard error. Deterministic for a fixed seed.
HvResult hv_monte_carlo(const std::vector<Vector>& points, const HvConfig& cfg);
HvResult hv_monte_carlo(const Population& pop, const HvConfig& cfg);

/// Produces the Jacobian for a member that does not carry one.
using JacobianFn = std::function<Matrix(const Individual&)>;

/// Per-member clamped KKT residuals and the aggregate entropy value.
struct EntropyTerms {
  Vector clamped;       // min(1/e, ||q||^2) per member
  double h_value = 0.0;
};

/// Entropy convergence indicator:
///   H = (1/2k) * sum_i -q_i log2 q_i,  q_i = min(1/e, ||q(x_i)||^2),
/// with 0 * log2 0 = 0. ||q(x)||^2 is the squared norm of the optimal convex
/// combination of the member's objective gradients (see q_norm_sq). Members
/// without a Jacobian fall back to jacobian_fn; if neither is available a
/// UsageError explains that decision vectors / a problem are required.
EntropyTerms entropy_indicator(const Population& pop, double qp_tol = 1e-12);
EntropyTerms entropy_indicator(const Population& pop, const JacobianFn& jacobian_fn,
                               double qp_tol = 1e-12);

/// Tight upper bound of the entropy indicator: (1/2) * log2(e) / e, reached
/// when every clamped residual equals 1/e.
double h_upper_bound();

}  // namespace moqi

#endif  // MOQI_INDICATORS_HPP
