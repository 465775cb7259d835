#pragma once

#include "porpi/exact/projection.hpp"

namespace porpi::exact {

/// One application of the fixed-reference preference equation
///   Psi(b,a) = (1/eta) log ref(a|b) + R(b,a) + gamma sum_o P(o|a,b) L Psi(phi(b,a,o)).
Eigen::MatrixXd reference_backup(const Eigen::MatrixXd& prefs, const CoverProjection& proj,
                                 const Eigen::MatrixXd& reference, double eta);

/// Fixed point of reference_backup (a gamma-contraction) iterated to `tolerance`.
Eigen::MatrixXd solve_reference_preferences(const CoverProjection& proj,
                                            const Eigen::MatrixXd& reference, double eta,
                                            double tolerance = 1e-12, int max_iterations = 1'000'000);

}  // namespace porpi::exact
