#include "porpi/exact/covering.hpp"

#include <algorithm>
#include <limits>

namespace porpi::exact {

CoveringSet build_internal_covering(const std::vector<Belief>& beliefs, double delta) {
  if (delta < 0.0) throw DomainError("covering radius must be non-negative");
  CoveringSet cover;
  cover.radius = delta;
  for (const auto& b : beliefs) {
    bool far = true;
    for (const auto& c : cover.beliefs) {
      if (l1_distance(b, c) <= delta) {
        far = false;
        break;
      }
    }
    if (far) cover.beliefs.push_back(b);
  }
  return cover;
}

int nearest_member(const CoveringSet& cover, const Belief& b) {
  if (cover.beliefs.empty()) throw DomainError("empty covering set");
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cover.beliefs.size(); ++i) {
    const double d = l1_distance(cover.beliefs[i], b);
    if (d < best_d - 1e-12) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

int nearest_belief(const CoveringSet& cover, const Belief& b, int a, int o, const TabularPomdp& model) {
  return nearest_member(cover, model.update(b, a, o));
}

double covering_radius(const CoveringSet& cover, const std::vector<Belief>& points) {
  double r = 0.0;
  for (const auto& p : points)
    r = std::max(r, l1_distance(p, cover.beliefs[static_cast<std::size_t>(nearest_member(cover, p))]));
  return r;
}

double packing_separation(const CoveringSet& cover) {
  double sep = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cover.beliefs.size(); ++i)
    for (std::size_t j = i + 1; j < cover.beliefs.size(); ++j)
      sep = std::min(sep, l1_distance(cover.beliefs[i], cover.beliefs[j]));
  return sep;
}

}  // namespace porpi::exact
