#pragma once

#include <vector>

#include "porpi/core/types.hpp"
#include "porpi/env/geometry.hpp"

namespace porpi::env {

/// Geometry a roadmap needs from a continuous scenario.
class NavigationDomain {
 public:
  virtual ~NavigationDomain() = default;

  virtual int dimension() const = 0;
  virtual Box bounds() const = 0;
  virtual double speed() const = 0;
  /// True iff p is at least `clearance` away from every obstacle and boundary.
  virtual bool is_free(const Vec3& p, double clearance) const = 0;
  /// Points every roadmap must contain (landmarks, goals, objectives).
  virtual std::vector<Vec3> targets() const = 0;
  /// Target indices the sampler may aim for from s.
  virtual std::vector<int> candidate_targets(const State& s) const = 0;
  /// Target indices whose attainment ends the task; used by value heuristics.
  virtual std::vector<int> heuristic_targets(const State& s) const = 0;
};

}  // namespace porpi::env
