#include "porpi/exact/reference.hpp"

#include "porpi/core/softmax.hpp"

namespace porpi::exact {

Eigen::MatrixXd reference_backup(const Eigen::MatrixXd& prefs, const CoverProjection& proj,
                                 const Eigen::MatrixXd& reference, double eta) {
  if (!(eta > 0.0)) throw DomainError("eta must be positive");
  if (reference.rows() != proj.belief_count() || reference.cols() != proj.action_count())
    throw DomainError("reference policy shape does not match the cover");
  if ((reference.array() <= 0.0).any()) throw DomainError("reference policy must be strictly positive");
  const Eigen::VectorXd lse = log_sum_exp_rows(prefs, eta);
  Eigen::MatrixXd out = reference.array().log().matrix() / eta + proj.rewards();
  for (int b = 0; b < proj.belief_count(); ++b)
    for (int a = 0; a < proj.action_count(); ++a)
      for (const auto& s : proj.successors(b, a)) out(b, a) += proj.discount() * s.probability * lse(s.next);
  return out;
}

Eigen::MatrixXd solve_reference_preferences(const CoverProjection& proj, const Eigen::MatrixXd& reference,
                                            double eta, double tolerance, int max_iterations) {
  Eigen::MatrixXd prefs = Eigen::MatrixXd::Zero(proj.belief_count(), proj.action_count());
  for (int it = 0; it < max_iterations; ++it) {
    Eigen::MatrixXd next = reference_backup(prefs, proj, reference, eta);
    const double residual = (next - prefs).cwiseAbs().maxCoeff();
    prefs = std::move(next);
    if (residual <= tolerance) return prefs;
  }
  throw NumericError("reference preference iteration did not converge");
}

}  // namespace porpi::exact
