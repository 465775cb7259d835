#include "porpi/env/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace porpi::env {

double Box::distance(const Vec3& p, int dims) const {
  double sq = 0.0;
  for (int i = 0; i < dims; ++i) {
    const double d = std::max({lo(i) - p(i), 0.0, p(i) - hi(i)});
    sq += d * d;
  }
  return std::sqrt(sq);
}

}  // namespace porpi::env
