#include "moqi/indicators.hpp"

#include <algorithm>
#include <cmath>

#include "moqi/rng.hpp"
#include "moqi/simplex_qp.hpp"

namespace moqi {

namespace {

void check_sets(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  if (a.empty() || b.empty()) throw UsageError("indicator sets must be non-empty");
  const std::size_t m = a.front().size();
  for (const auto& v : a)
    if (v.size() != m) throw UsageError("indicator set has mixed dimensions");
  for (const auto& v : b)
    if (v.size() != m) throw UsageError("indicator sets have mismatched dimensions");
}

// 2-D hypervolume by staircase sweep. Assumes every point is <= ref.
// Each staircase point owns the vertical strip from its x to the next
// staircase point's x, spanning from its y up to the reference.
double hv_2d(std::vector<Vector> pts, const Vector& ref) {
  std::sort(pts.begin(), pts.end(), [](const Vector& a, const Vector& b) {
    if (a[0] != b[0]) return a[0] < b[0];
    return a[1] < b[1];
  });
  double area = 0.0;
  double best_y = ref[1];
  bool open = false;
  double open_x = 0.0;
  double open_y = 0.0;
  for (const auto& p : pts) {
    if (p[1] >= best_y) continue;  // dominated within the staircase
    if (open) area += (p[0] - open_x) * (ref[1] - open_y);
    open_x = p[0];
    open_y = p[1];
    best_y = p[1];
    open = true;
  }
  if (open) area += (ref[0] - open_x) * (ref[1] - open_y);
  return area;
}

// Insert p into a list kept mutually non-dominated under weak dominance
// (p adds nothing if some member is <= p componentwise).
void nd_insert(std::vector<Vector>& active, const Vector& p) {
  for (const auto& a : active) {
    bool covers = true;
    for (std::size_t j = 0; j < p.size(); ++j)
      if (a[j] > p[j]) {
        covers = false;
        break;
      }
    if (covers) return;
  }
  std::erase_if(active, [&](const Vector& a) {
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p[j] > a[j]) return false;
    return true;
  });
  active.push_back(p);
}

// Recursive slicing on the last objective; d >= 3.
double hv_slice(std::vector<Vector> pts, const Vector& ref) {
  const std::size_t d = ref.size();
  if (pts.empty()) return 0.0;
  if (d == 2) return hv_2d(std::move(pts), ref);
  std::sort(pts.begin(), pts.end(),
            [d](const Vector& a, const Vector& b) { return a[d - 1] < b[d - 1]; });
  const Vector sub_ref(ref.begin(), ref.end() - 1);
  std::vector<Vector> active;
  double volume = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    nd_insert(active, Vector(pts[i].begin(), pts[i].end() - 1));
    const double z_lo = pts[i][d - 1];
    const double z_hi = (i + 1 < pts.size()) ? pts[i + 1][d - 1] : ref[d - 1];
    if (z_hi > z_lo) volume += hv_slice(active, sub_ref) * (z_hi - z_lo);
  }
  return volume;
}

struct PreparedPoints {
  std::vector<Vector> pts;   // normalized if requested, beyond-ref removed
  std::vector<Vector> all;   // normalized if requested, nothing removed
  std::size_t discarded = 0;
};

PreparedPoints prepare(const std::vector<Vector>& points, const HvConfig& cfg) {
  if (points.empty()) throw UsageError("hypervolume needs a non-empty set");
  const std::size_t m = cfg.reference_point.size();
  if (m < 2) throw UsageError("hypervolume needs at least two objectives");
  for (const auto& p : points)
    if (p.size() != m)
      throw UsageError("hypervolume points and reference have mismatched dimensions");
  if (cfg.normalize && cfg.nadir.size() != m)
    throw UsageError("hypervolume normalization needs a nadir of matching dimension");
  if (cfg.normalize)
    for (double v : cfg.nadir)
      if (!(v > 0.0)) throw UsageError("hypervolume nadir components must be positive");

  PreparedPoints out;
  out.all.reserve(points.size());
  for (const auto& p : points) {
    Vector q = p;
    if (cfg.normalize)
      for (std::size_t j = 0; j < m; ++j) q[j] /= cfg.nadir[j];
    bool inside = true;
    for (std::size_t j = 0; j < m; ++j)
      if (q[j] > cfg.reference_point[j]) {
        inside = false;
        break;
      }
    if (inside)
      out.pts.push_back(q);
    else
      ++out.discarded;
    out.all.push_back(std::move(q));
  }
  return out;
}

}  // namespace

double igd(const std::vector<Vector>& approx, const std::vector<Vector>& reference) {
  // Defined through the power mean so that igd == igd_p(.,.,2)/sqrt(r) holds
  // bit for bit, not just within rounding error.
  return igd_p(approx, reference, 2.0) /
         std::sqrt(static_cast<double>(reference.size()));
}

double gd(const std::vector<Vector>& approx, const std::vector<Vector>& reference) {
  return igd(reference, approx);
}

double igd_p(const std::vector<Vector>& approx, const std::vector<Vector>& reference,
             double p) {
  if (!(p >= 1.0)) throw UsageError("igd_p needs p >= 1");
  check_sets(approx, reference);
  double s = 0.0;
  for (const auto& y : reference) s += std::pow(min_distance(y, approx), p);
  return std::pow(s / static_cast<double>(reference.size()), 1.0 / p);
}

double gd_p(const std::vector<Vector>& approx, const std::vector<Vector>& reference,
            double p) {
  return igd_p(reference, approx, p);
}

double delta_p(const std::vector<Vector>& a, const std::vector<Vector>& b, double p) {
  return std::max(igd_p(a, b, p), igd_p(b, a, p));
}

double igd(const Population& approx, const ReferenceFront& reference) {
  return igd(objectives_of(approx), reference.points);
}
double gd(const Population& approx, const ReferenceFront& reference) {
  return gd(objectives_of(approx), reference.points);
}
double igd_p(const Population& approx, const ReferenceFront& reference, double p) {
  return igd_p(objectives_of(approx), reference.points, p);
}
double gd_p(const Population& approx, const ReferenceFront& reference, double p) {
  return gd_p(objectives_of(approx), reference.points, p);
}
double delta_p(const Population& a, const ReferenceFront& b, double p) {
  return delta_p(objectives_of(a), b.points, p);
}

HvResult hv_exact(const std::vector<Vector>& points, const HvConfig& cfg) {
  const std::size_t m = cfg.reference_point.size();
  if (m < 2 || m > 4)
    throw UsageError("exact hypervolume supports 2 to 4 objectives; use Monte Carlo");
  PreparedPoints prep = prepare(points, cfg);
  HvResult res;
  res.discarded = prep.discarded;
  if (prep.pts.empty()) return res;
  res.value = (m == 2) ? hv_2d(std::move(prep.pts), cfg.reference_point)
                       : hv_slice(std::move(prep.pts), cfg.reference_point);
  return res;
}

HvResult hv_monte_carlo(const std::vector<Vector>& points, const HvConfig& cfg) {
  if (cfg.mc_samples == 0) throw UsageError("Monte Carlo needs at least one sample");
  PreparedPoints prep = prepare(points, cfg);
  const std::size_t m = cfg.reference_point.size();

  Vector lo(m);
  for (std::size_t j = 0; j < m; ++j) {
    double v = prep.all.front()[j];
    for (const auto& p : prep.all) v = std::min(v, p[j]);
    lo[j] = v;
  }
  double volume = 1.0;
  for (std::size_t j = 0; j < m; ++j) volume *= cfg.reference_point[j] - lo[j];

  HvResult res;
  res.discarded = prep.discarded;
  if (!(volume > 0.0)) {
    res.degenerate = true;
    return res;
  }

  Rng rng(cfg.seed);
  std::size_t hits = 0;
  Vector u(m);
  for (std::size_t s = 0; s < cfg.mc_samples; ++s) {
    for (std::size_t j = 0; j < m; ++j)
      u[j] = lo[j] + (cfg.reference_point[j] - lo[j]) * rng.uniform();
    for (const auto& p : prep.pts) {
      bool dom = true;
      for (std::size_t j = 0; j < m; ++j)
        if (p[j] > u[j]) {
          dom = false;
          break;
        }
      if (dom) {
        ++hits;
        break;
      }
    }
  }
  const double n = static_cast<double>(cfg.mc_samples);
  const double frac = static_cast<double>(hits) / n;
  res.value = volume * frac;
  res.std_error = volume * std::sqrt(frac * (1.0 - frac) / n);
  res.samples = cfg.mc_samples;
  return res;
}

HvResult hv_exact(const Population& pop, const HvConfig& cfg) {
  return hv_exact(objectives_of(pop), cfg);
}
HvResult hv_monte_carlo(const Population& pop, const HvConfig& cfg) {
  return hv_monte_carlo(objectives_of(pop), cfg);
}

EntropyTerms entropy_indicator(const Population& pop, double qp_tol) {
  return entropy_indicator(pop, JacobianFn(), qp_tol);
}

EntropyTerms entropy_indicator(const Population& pop, const JacobianFn& jacobian_fn,
                               double qp_tol) {
  pop.validate();
  const double inv_e = 1.0 / std::exp(1.0);
  EntropyTerms out;
  out.clamped.reserve(pop.size());
  double sum = 0.0;
  for (const auto& member : pop.members) {
    Matrix jac;
    if (member.jacobian) {
      jac = *member.jacobian;
    } else if (jacobian_fn) {
      jac = jacobian_fn(member);
    } else {
      throw UsageError(
          "entropy indicator requires Jacobians: decision vectors plus a "
          "registered problem (or precomputed gradients) are needed");
    }
    if (jac.rows != member.objectives.size())
      throw UsageError("Jacobian row count does not match objective count");
    const double residual = q_norm_sq(jac, qp_tol);
    const double q = std::min(inv_e, residual);
    out.clamped.push_back(q);
    if (q > 0.0) sum += -q * std::log2(q);
  }
  out.h_value = sum / (2.0 * static_cast<double>(pop.size()));
  return out;
}

double h_upper_bound() {
  const double e = std::exp(1.0);
  return 0.5 * std::log2(e) / e;
}

}  // namespace moqi
