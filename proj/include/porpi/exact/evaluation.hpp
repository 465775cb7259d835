#pragma once

#include "porpi/exact/projection.hpp"

namespace porpi::exact {

/// Q^pi on the cover with next beliefs forced to their nearest member:
///   Q(b,a) = R(b,a) + gamma sum_o P(o|a,b) sum_a' pi(a'|phi) Q(phi, a').
/// Fixed-point iteration to `tolerance` sup-norm residual; NumericError if the
/// iteration cap is hit.
Eigen::MatrixXd evaluate_policy_on_cover(const Eigen::MatrixXd& policy, const CoverProjection& proj,
                                         double gamma, double tolerance = 1e-10,
                                         int max_iterations = 1'000'000);

}  // namespace porpi::exact
