#pragma once

#include "porpi/core/types.hpp"

namespace porpi::env {

/// Closed axis-aligned box.
struct Box {
  Vec3 lo = Vec3::Zero();
  Vec3 hi = Vec3::Zero();

  bool contains(const Vec3& p) const {
    return (p.array() >= lo.array()).all() && (p.array() <= hi.array()).all();
  }
  Vec3 center() const { return 0.5 * (lo + hi); }
  bool valid() const { return (lo.array() <= hi.array()).all(); }
  bool intersects(const Box& other) const {
    return (lo.array() <= other.hi.array()).all() && (other.lo.array() <= hi.array()).all();
  }
  /// Euclidean distance from p to the box over the first `dims` axes.
  double distance(const Vec3& p, int dims = 3) const;
};

/// Closed ball.
struct Ball {
  Vec3 center = Vec3::Zero();
  double radius = 0.0;

  bool contains(const Vec3& p) const { return (p - center).norm() <= radius; }
};

}  // namespace porpi::env
