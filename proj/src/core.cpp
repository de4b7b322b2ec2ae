#include "moqi/core.hpp"

#include <cmath>
#include <limits>

namespace moqi {

bool Bounds::contains(const Vector& x) const {
  if (x.size() != lower.size() || x.size() != upper.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lower[i] || x[i] > upper[i]) return false;
  }
  return true;
}

std::size_t Population::objective_count() const {
  return members.empty() ? 0 : members.front().objectives.size();
}

bool Population::has_decisions() const {
  if (members.empty()) return false;
  for (const auto& ind : members) {
    if (!ind.decision) return false;
  }
  return true;
}

bool Population::has_jacobians() const {
  if (members.empty()) return false;
  for (const auto& ind : members) {
    if (!ind.jacobian) return false;
  }
  return true;
}

void Population::validate() const {
  if (members.empty()) throw UsageError("population is empty");
  const std::size_t m = members.front().objectives.size();
  if (m < 2) throw UsageError("objective vectors need at least two components");
  std::size_t n = members.front().decision ? members.front().decision->size() : 0;
  for (const auto& ind : members) {
    if (ind.objectives.size() != m)
      throw UsageError("population has mixed objective dimensions");
    const std::size_t ni = ind.decision ? ind.decision->size() : 0;
    if (ni != n) throw UsageError("population has mixed decision dimensions");
  }
}

bool dominates(const Vector& u, const Vector& v) {
  if (u.size() != v.size())
    throw UsageError("dominance requires equal objective dimensions");
  bool strict = false;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] > v[i]) return false;
    if (u[i] < v[i]) strict = true;
  }
  return strict;
}

std::vector<std::size_t> non_dominated_indices(const std::vector<Vector>& points) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      if (j != i && dominates(points[j], points[i])) dominated = true;
    }
    if (!dominated) keep.push_back(i);
  }
  return keep;
}

Population non_dominated_filter(const Population& pop) {
  if (pop.empty()) throw UsageError("cannot filter an empty population");
  const auto idx = non_dominated_indices(objectives_of(pop));
  Population out;
  out.problem_id = pop.problem_id;
  out.members.reserve(idx.size());
  for (std::size_t i : idx) out.members.push_back(pop.members[i]);
  return out;
}

double min_distance(const Vector& y, const std::vector<Vector>& points) {
  if (points.empty()) throw UsageError("min_distance needs a non-empty set");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    if (p.size() != y.size())
      throw UsageError("min_distance requires equal dimensions");
    double d2 = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double d = y[i] - p[i];
      d2 += d * d;
    }
    if (d2 < best) best = d2;
  }
  return std::sqrt(best);
}

std::vector<Vector> objectives_of(const Population& pop) {
  std::vector<Vector> out;
  out.reserve(pop.size());
  for (const auto& ind : pop.members) out.push_back(ind.objectives);
  return out;
}

}  // namespace moqi
