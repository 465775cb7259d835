#pragma once

#include <cstddef>
#include <span>

namespace porpi::exact {

struct BoundParameters {
  double gamma = 0.95;
  double eta = 1.0;
  int actions = 2;
  double vmax = 1.0;
  double delta = 0.0;
  std::size_t covering_number = 1;
  double alpha = 0.05;
};

struct TheoremConstants {
  double k1 = 0.0;
  double k2 = 0.0;
};

/// K1 = 2 gamma (log|A|/eta + 4 Vmax) / (1-gamma)^2,
/// K2 = [4 gamma log|A| / (eta (1-gamma)^3) + 2 Vmax/(1-gamma)] sqrt(2 log(2|A|N/alpha)).
TheoremConstants theorem_constants(const BoundParameters& p);

/// Average-error bound after k iterations given ||E_j||_inf for j = 0..k
/// (missing entries count as zero).
double theorem1_bound(int k, const BoundParameters& p, std::span<const double> error_sup_norms = {});

/// K1/(k+1) + K2/sqrt(k+1) + gamma delta Vmax / (1-gamma).
double theorem2_bound(int k, const BoundParameters& p);

/// gamma delta Vmax / (1 - gamma).
double projection_term(const BoundParameters& p);

struct TheoremBounds {
  double theorem1 = 0.0;
  double theorem2 = 0.0;
};

/// Both bounds; DomainError when a parameter is out of range.
TheoremBounds theorem_bounds(int k, const BoundParameters& p, std::span<const double> error_sup_norms = {});

}  // namespace porpi::exact
