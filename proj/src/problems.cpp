#include "moqi/problems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "moqi/rng.hpp"

namespace moqi {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_point(const ProblemSpec& p, const Vector& x) {
  if (static_cast<int>(x.size()) != p.n)
    throw UsageError("decision vector has dimension " + std::to_string(x.size()) +
                     ", expected " + std::to_string(p.n));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= p.bounds.lower[i] && x[i] <= p.bounds.upper[i]))
      throw UsageError("decision variable x" + std::to_string(i + 1) +
                       " is outside the problem bounds");
  }
}

// ---- DTLZ1 ----------------------------------------------------------------

double dtlz1_g(const ProblemSpec& p, const Vector& x) {
  const int k = p.n - p.m + 1;
  double s = 0.0;
  for (int j = p.m - 1; j < p.n; ++j) {
    const double t = x[j] - 0.5;
    s += t * t - std::cos(20.0 * kPi * t);
  }
  return 100.0 * (static_cast<double>(k) + s);
}

// Position-variable part of objective i: product of the first c = m-1-i
// position variables, times (1 - x_c) for i >= 1.
double dtlz1_shape(const Vector& x, int m, int i) {
  const int c = m - 1 - i;
  double h = 1.0;
  for (int j = 0; j < c; ++j) h *= x[j];
  if (i >= 1) h *= 1.0 - x[c];
  return h;
}

Vector dtlz1_eval(const ProblemSpec& p, const Vector& x) {
  const double g = dtlz1_g(p, x);
  Vector f(p.m);
  for (int i = 0; i < p.m; ++i) f[i] = 0.5 * (1.0 + g) * dtlz1_shape(x, p.m, i);
  return f;
}

Matrix dtlz1_jacobian(const ProblemSpec& p, const Vector& x) {
  const double g = dtlz1_g(p, x);
  Matrix jac(p.m, p.n);
  for (int i = 0; i < p.m; ++i) {
    const int c = p.m - 1 - i;
    const double h = dtlz1_shape(x, p.m, i);
    for (int l = 0; l < p.m - 1; ++l) {
      double d = 0.0;
      if (l < c) {
        d = 1.0;
        for (int j = 0; j < c; ++j)
          if (j != l) d *= x[j];
        if (i >= 1) d *= 1.0 - x[c];
      } else if (l == c && i >= 1) {
        d = -1.0;
        for (int j = 0; j < c; ++j) d *= x[j];
      }
      jac(i, l) = 0.5 * (1.0 + g) * d;
    }
    for (int j = p.m - 1; j < p.n; ++j) {
      const double t = x[j] - 0.5;
      const double gp = 100.0 * (2.0 * t + 20.0 * kPi * std::sin(20.0 * kPi * t));
      jac(i, j) = 0.5 * h * gp;
    }
  }
  return jac;
}

// ---- DTLZ2 / DTLZ5 --------------------------------------------------------

double sphere_g(const ProblemSpec& p, const Vector& x) {
  double s = 0.0;
  for (int j = p.m - 1; j < p.n; ++j) {
    const double t = x[j] - 0.5;
    s += t * t;
  }
  return s;
}

// Trigonometric shape T_i over angles theta_0..theta_{m-2}:
//   T_0 = prod cos(theta_j), T_i = prod_{j<c} cos(theta_j) * sin(theta_c)
// with c = m-1-i.
double trig_shape(const Vector& theta, int m, int i) {
  const int c = m - 1 - i;
  double t = 1.0;
  for (int j = 0; j < c; ++j) t *= std::cos(theta[j]);
  if (i >= 1) t *= std::sin(theta[c]);
  return t;
}

// d T_i / d theta_q.
double trig_shape_dtheta(const Vector& theta, int m, int i, int q) {
  const int c = m - 1 - i;
  if (q > c || (q == c && i == 0)) return 0.0;
  double t = 1.0;
  for (int j = 0; j < c; ++j) {
    t *= (j == q) ? -std::sin(theta[j]) : std::cos(theta[j]);
  }
  if (i >= 1) t *= (q == c) ? std::cos(theta[c]) : std::sin(theta[c]);
  return t;
}

Vector dtlz2_eval(const ProblemSpec& p, const Vector& x) {
  const double g = sphere_g(p, x);
  Vector theta(p.m - 1);
  for (int j = 0; j < p.m - 1; ++j) theta[j] = x[j] * kPi / 2.0;
  Vector f(p.m);
  for (int i = 0; i < p.m; ++i) f[i] = (1.0 + g) * trig_shape(theta, p.m, i);
  return f;
}

Matrix dtlz2_jacobian(const ProblemSpec& p, const Vector& x) {
  const double g = sphere_g(p, x);
  Vector theta(p.m - 1);
  for (int j = 0; j < p.m - 1; ++j) theta[j] = x[j] * kPi / 2.0;
  Matrix jac(p.m, p.n);
  for (int i = 0; i < p.m; ++i) {
    const double t = trig_shape(theta, p.m, i);
    for (int l = 0; l < p.m - 1; ++l)
      jac(i, l) = (1.0 + g) * trig_shape_dtheta(theta, p.m, i, l) * (kPi / 2.0);
    for (int j = p.m - 1; j < p.n; ++j) jac(i, j) = t * 2.0 * (x[j] - 0.5);
  }
  return jac;
}

Vector dtlz5_theta(const ProblemSpec& p, const Vector& x, double g) {
  Vector theta(p.m - 1);
  theta[0] = x[0] * kPi / 2.0;
  for (int q = 1; q < p.m - 1; ++q)
    theta[q] = kPi / (4.0 * (1.0 + g)) * (1.0 + 2.0 * g * x[q]);
  return theta;
}

Vector dtlz5_eval(const ProblemSpec& p, const Vector& x) {
  const double g = sphere_g(p, x);
  const Vector theta = dtlz5_theta(p, x, g);
  Vector f(p.m);
  for (int i = 0; i < p.m; ++i) f[i] = (1.0 + g) * trig_shape(theta, p.m, i);
  return f;
}

Matrix dtlz5_jacobian(const ProblemSpec& p, const Vector& x) {
  const double g = sphere_g(p, x);
  const Vector theta = dtlz5_theta(p, x, g);
  Matrix jac(p.m, p.n);
  for (int i = 0; i < p.m; ++i) {
    const double t = trig_shape(theta, p.m, i);
    // theta_0 depends only on x_0; theta_q (q >= 1) depends on x_q and,
    // through g, on every distance variable.
    jac(i, 0) = (1.0 + g) * trig_shape_dtheta(theta, p.m, i, 0) * (kPi / 2.0);
    for (int q = 1; q < p.m - 1; ++q)
      jac(i, q) = (1.0 + g) * trig_shape_dtheta(theta, p.m, i, q) * kPi * g /
                  (2.0 * (1.0 + g));
    for (int j = p.m - 1; j < p.n; ++j) {
      const double gj = 2.0 * (x[j] - 0.5);
      double chain = 0.0;
      for (int q = 1; q < p.m - 1; ++q) {
        const double dtheta_dg =
            (kPi / 4.0) * (2.0 * x[q] - 1.0) / ((1.0 + g) * (1.0 + g));
        chain += trig_shape_dtheta(theta, p.m, i, q) * dtheta_dg * gj;
      }
      jac(i, j) = t * gj + (1.0 + g) * chain;
    }
  }
  return jac;
}

// ---- DTLZ7 ----------------------------------------------------------------

Vector dtlz7_eval(const ProblemSpec& p, const Vector& x) {
  const int k = p.n - p.m + 1;
  double s = 0.0;
  for (int j = p.m - 1; j < p.n; ++j) s += x[j];
  const double g = 1.0 + 9.0 / static_cast<double>(k) * s;
  Vector f(p.m);
  double h = static_cast<double>(p.m);
  for (int i = 0; i < p.m - 1; ++i) {
    f[i] = x[i];
    h -= x[i] / (1.0 + g) * (1.0 + std::sin(3.0 * kPi * x[i]));
  }
  f[p.m - 1] = (1.0 + g) * h;
  return f;
}

Matrix dtlz7_jacobian(const ProblemSpec& p, const Vector& x) {
  const int k = p.n - p.m + 1;
  const double gj = 9.0 / static_cast<double>(k);
  Matrix jac(p.m, p.n);
  for (int i = 0; i < p.m - 1; ++i) jac(i, i) = 1.0;
  // f_m = (1+g)*m - sum_i x_i (1 + sin(3 pi x_i)), so the distance part is
  // linear in g and the position part does not involve g at all.
  for (int l = 0; l < p.m - 1; ++l) {
    const double sl = std::sin(3.0 * kPi * x[l]);
    const double cl = std::cos(3.0 * kPi * x[l]);
    jac(p.m - 1, l) = -(1.0 + sl + 3.0 * kPi * x[l] * cl);
  }
  for (int j = p.m - 1; j < p.n; ++j)
    jac(p.m - 1, j) = gj * static_cast<double>(p.m);
  return jac;
}

// ---- ZDT2 -----------------------------------------------------------------

Vector zdt2_eval(const ProblemSpec& p, const Vector& x) {
  double s = 0.0;
  for (int j = 1; j < p.n; ++j) s += x[j];
  const double g = 1.0 + 9.0 * s / static_cast<double>(p.n - 1);
  const double ratio = x[0] / g;
  return {x[0], g * (1.0 - ratio * ratio)};
}

Matrix zdt2_jacobian(const ProblemSpec& p, const Vector& x) {
  double s = 0.0;
  for (int j = 1; j < p.n; ++j) s += x[j];
  const double g = 1.0 + 9.0 * s / static_cast<double>(p.n - 1);
  Matrix jac(2, p.n);
  jac(0, 0) = 1.0;
  jac(1, 0) = -2.0 * x[0] / g;
  const double dg = 9.0 / static_cast<double>(p.n - 1);
  const double d = dg * (1.0 + x[0] * x[0] / (g * g));
  for (int j = 1; j < p.n; ++j) jac(1, j) = d;
  return jac;
}

}  // namespace

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names = {"dtlz1", "dtlz2", "dtlz5",
                                                 "dtlz7", "zdt2"};
  return names;
}

ProblemSpec make_problem(const std::string& name, int m, int n) {
  ProblemSpec p;
  p.name = name;
  if (name == "dtlz1")
    p.kind = ProblemKind::Dtlz1;
  else if (name == "dtlz2")
    p.kind = ProblemKind::Dtlz2;
  else if (name == "dtlz5")
    p.kind = ProblemKind::Dtlz5;
  else if (name == "dtlz7")
    p.kind = ProblemKind::Dtlz7;
  else if (name == "zdt2")
    p.kind = ProblemKind::Zdt2;
  else
    throw UsageError("unknown problem '" + name + "'");

  if (p.kind == ProblemKind::Zdt2) {
    if (m != 0 && m != 2) throw UsageError("zdt2 is a two-objective problem");
    p.m = 2;
    p.n = (n == 0) ? 30 : n;
    if (p.n < 2) throw UsageError("zdt2 needs n >= 2");
  } else {
    p.m = (m == 0) ? 3 : m;
    if (p.m < 2 || p.m > 15)
      throw UsageError("objective count must be between 2 and 15");
    const int extra = (p.kind == ProblemKind::Dtlz1) ? 4 : 9;
    p.n = (n == 0) ? p.m + extra : n;
    if (p.n < p.m)
      throw UsageError("DTLZ problems need n >= m");
  }
  p.bounds.lower.assign(p.n, 0.0);
  p.bounds.upper.assign(p.n, 1.0);
  return p;
}

Vector evaluate(const ProblemSpec& p, const Vector& x) {
  check_point(p, x);
  switch (p.kind) {
    case ProblemKind::Dtlz1:
      return dtlz1_eval(p, x);
    case ProblemKind::Dtlz2:
      return dtlz2_eval(p, x);
    case ProblemKind::Dtlz5:
      return dtlz5_eval(p, x);
    case ProblemKind::Dtlz7:
      return dtlz7_eval(p, x);
    case ProblemKind::Zdt2:
      return zdt2_eval(p, x);
  }
  throw std::logic_error("unreachable");
}

Matrix jacobian(const ProblemSpec& p, const Vector& x) {
  check_point(p, x);
  switch (p.kind) {
    case ProblemKind::Dtlz1:
      return dtlz1_jacobian(p, x);
    case ProblemKind::Dtlz2:
      return dtlz2_jacobian(p, x);
    case ProblemKind::Dtlz5:
      return dtlz5_jacobian(p, x);
    case ProblemKind::Dtlz7:
      return dtlz7_jacobian(p, x);
    case ProblemKind::Zdt2:
      return zdt2_jacobian(p, x);
  }
  throw std::logic_error("unreachable");
}

FdJacobian finite_diff_jacobian(const ProblemSpec& p, const Vector& x, double h) {
  if (!(h > 0.0)) throw UsageError("finite-difference step must be positive");
  check_point(p, x);
  FdJacobian out;
  out.jac = Matrix(p.m, p.n);
  for (int j = 0; j < p.n; ++j) {
    Vector hi = x;
    Vector lo = x;
    hi[j] = std::min(x[j] + h, p.bounds.upper[j]);
    lo[j] = std::max(x[j] - h, p.bounds.lower[j]);
    if (hi[j] != x[j] + h || lo[j] != x[j] - h) out.one_sided = true;
    const double denom = hi[j] - lo[j];
    if (denom <= 0.0)
      throw UsageError("finite-difference step collapses at variable x" +
                       std::to_string(j + 1));
    const Vector fhi = evaluate(p, hi);
    const Vector flo = evaluate(p, lo);
    for (int i = 0; i < p.m; ++i) out.jac(i, j) = (fhi[i] - flo[i]) / denom;
  }
  return out;
}

ReferenceFront sample_true_front(const ProblemSpec& p, std::size_t count,
                                 std::uint64_t seed) {
  if (count == 0) throw UsageError("front sample size must be positive");
  Rng rng(seed);
  ReferenceFront front;
  front.points.reserve(count);
  const int m = p.m;

  switch (p.kind) {
    case ProblemKind::Dtlz1: {
      // Uniform on the simplex sum f = 0.5 via normalized exponentials.
      while (front.points.size() < count) {
        Vector f(m);
        double s = 0.0;
        for (int i = 0; i < m; ++i) {
          f[i] = -std::log(1.0 - rng.uniform());
          s += f[i];
        }
        for (int i = 0; i < m; ++i) f[i] *= 0.5 / s;
        front.points.push_back(std::move(f));
      }
      return front;
    }
    case ProblemKind::Dtlz2: {
      // Uniform directions on the positive orthant of the unit sphere.
      while (front.points.size() < count) {
        Vector f(m);
        double s = 0.0;
        for (int i = 0; i < m; ++i) {
          f[i] = std::abs(rng.normal());
          s += f[i] * f[i];
        }
        s = std::sqrt(s);
        if (s == 0.0) continue;
        for (int i = 0; i < m; ++i) f[i] /= s;
        front.points.push_back(std::move(f));
      }
      return front;
    }
    case ProblemKind::Dtlz5: {
      // Degenerate curve: evaluate at distance variables exactly 0.5; the
      // remaining position variables are irrelevant there (their angles
      // collapse to pi/4).
      std::vector<Vector> candidates;
      while (true) {
        for (std::size_t b = 0; b < count; ++b) {
          Vector x(p.n, 0.5);
          x[0] = rng.uniform();
          candidates.push_back(evaluate(p, x));
        }
        const auto keep = non_dominated_indices(candidates);
        if (keep.size() >= count) {
          for (std::size_t i = 0; i < count; ++i)
            front.points.push_back(candidates[keep[i]]);
          return front;
        }
      }
    }
    case ProblemKind::Dtlz7: {
      // The mixed front is the non-dominated subset of the g = 1 surface;
      // oversample position space and filter cumulatively.
      std::vector<Vector> candidates;
      while (true) {
        for (std::size_t b = 0; b < 4 * count; ++b) {
          Vector x(p.n, 0.0);
          for (int i = 0; i < m - 1; ++i) x[i] = rng.uniform();
          candidates.push_back(evaluate(p, x));
        }
        const auto keep = non_dominated_indices(candidates);
        if (keep.size() >= count) {
          std::vector<Vector> kept;
          kept.reserve(keep.size());
          for (std::size_t i : keep) kept.push_back(candidates[i]);
          front.points.assign(kept.begin(), kept.begin() + static_cast<std::ptrdiff_t>(count));
          return front;
        }
        std::vector<Vector> kept;
        kept.reserve(keep.size());
        for (std::size_t i : keep) kept.push_back(candidates[i]);
        candidates = std::move(kept);
      }
    }
    case ProblemKind::Zdt2: {
      while (front.points.size() < count) {
        const double u = rng.uniform();
        front.points.push_back({u, 1.0 - u * u});
      }
      return front;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace moqi
