#include "porpi/exact/bounds.hpp"

#include <cmath>

#include "porpi/core/errors.hpp"

namespace porpi::exact {

namespace {

void check(const BoundParameters& p) {
  if (!(p.gamma > 0.0 && p.gamma < 1.0)) throw DomainError("gamma must lie in (0, 1)");
  if (!(p.eta > 0.0)) throw DomainError("eta must be positive");
  if (p.actions < 1) throw DomainError("need at least one action");
  if (!(p.vmax >= 0.0)) throw DomainError("Vmax must be non-negative");
  if (!(p.delta >= 0.0)) throw DomainError("delta must be non-negative");
  if (p.covering_number < 1) throw DomainError("covering number must be positive");
  if (!(p.alpha > 0.0 && p.alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
}

}  // namespace

TheoremConstants theorem_constants(const BoundParameters& p) {
  check(p);
  const double g = p.gamma;
  const double logA = std::log(static_cast<double>(p.actions));
  TheoremConstants c;
  c.k1 = 2.0 * g * (logA / p.eta + 4.0 * p.vmax) / ((1.0 - g) * (1.0 - g));
  c.k2 = (4.0 * g * logA / (p.eta * std::pow(1.0 - g, 3)) + 2.0 * p.vmax / (1.0 - g)) *
         std::sqrt(2.0 * std::log(2.0 * p.actions * static_cast<double>(p.covering_number) / p.alpha));
  return c;
}

double projection_term(const BoundParameters& p) {
  check(p);
  return p.gamma * p.delta * p.vmax / (1.0 - p.gamma);
}

double theorem1_bound(int k, const BoundParameters& p, std::span<const double> error_sup_norms) {
  check(p);
  if (k < 0) throw DomainError("iteration index must be non-negative");
  const double g = p.gamma;
  const double logA = std::log(static_cast<double>(p.actions));
  double errors = 0.0;
  for (int j = 0; j <= k && j < static_cast<int>(error_sup_norms.size()); ++j)
    errors += std::pow(g, k - j) * error_sup_norms[static_cast<std::size_t>(j)];
  return 2.0 / ((1.0 - g) * (k + 1)) * (g * (4.0 * p.vmax + logA / p.eta) / (1.0 - g) + errors);
}

double theorem2_bound(int k, const BoundParameters& p) {
  if (k < 0) throw DomainError("iteration index must be non-negative");
  const TheoremConstants c = theorem_constants(p);
  return c.k1 / (k + 1) + c.k2 / std::sqrt(k + 1.0) + projection_term(p);
}

TheoremBounds theorem_bounds(int k, const BoundParameters& p, std::span<const double> error_sup_norms) {
  return {theorem1_bound(k, p, error_sup_norms), theorem2_bound(k, p)};
}

}  // namespace porpi::exact
