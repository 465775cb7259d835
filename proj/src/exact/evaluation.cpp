#include "porpi/exact/evaluation.hpp"

#include <Eigen/LU>

namespace porpi::exact {

namespace {

Eigen::MatrixXd q_from_values(const Eigen::VectorXd& v, const CoverProjection& proj, double gamma) {
  Eigen::MatrixXd q = proj.rewards();
  for (int b = 0; b < proj.belief_count(); ++b)
    for (int a = 0; a < proj.action_count(); ++a)
      for (const auto& s : proj.successors(b, a)) q(b, a) += gamma * s.probability * v(s.next);
  return q;
}

Eigen::VectorXd policy_values(const Eigen::MatrixXd& q, const Eigen::MatrixXd& policy) {
  return policy.cwiseProduct(q).rowwise().sum();
}

}  // namespace

Eigen::MatrixXd evaluate_policy_on_cover(const Eigen::MatrixXd& policy, const CoverProjection& proj,
                                         double gamma, double tolerance, int max_iterations) {
  const int n = proj.belief_count();
  const int A = proj.action_count();
  if (policy.rows() != n || policy.cols() != A) throw DomainError("policy shape does not match the cover");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw DomainError("discount must lie in [0, 1)");

  // Direct solve of (I - gamma P_pi) V = R_pi, then fixed-point polishing.
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd r = policy_values(proj.rewards(), policy);
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < A; ++a)
      for (const auto& s : proj.successors(b, a)) P(b, s.next) += policy(b, a) * s.probability;
  Eigen::VectorXd v = (Eigen::MatrixXd::Identity(n, n) - gamma * P).partialPivLu().solve(r);

  Eigen::MatrixXd q = q_from_values(v, proj, gamma);
  for (int it = 0; it < max_iterations; ++it) {
    const Eigen::MatrixXd next = q_from_values(policy_values(q, policy), proj, gamma);
    const double residual = (next - q).cwiseAbs().maxCoeff();
    q = next;
    if (residual <= tolerance) return q;
  }
  throw NumericError("policy evaluation did not converge");
}

}  // namespace porpi::exact
