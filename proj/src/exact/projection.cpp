#include "porpi/exact/projection.hpp"

namespace porpi::exact {

CoverProjection::CoverProjection(const TabularPomdp& model, CoveringSet cover)
    : model_(model), cover_(std::move(cover)) {
  const int n = belief_count();
  const int A = action_count();
  if (n == 0) throw DomainError("empty covering set");
  rewards_.resize(n, A);
  successors_.resize(static_cast<std::size_t>(n * A));
  for (int i = 0; i < n; ++i) {
    const Belief& b = cover_.beliefs[static_cast<std::size_t>(i)];
    for (int a = 0; a < A; ++a) {
      rewards_(i, a) = model_.expected_reward(b, a);
      const Eigen::VectorXd p = model_.observation_probabilities(b, a);
      auto& list = successors_[static_cast<std::size_t>(i * A + a)];
      for (int o = 0; o < model_.observation_count(); ++o) {
        if (!(p(o) > 0.0)) continue;
        list.push_back({o, p(o), nearest_member(cover_, model_.update(b, a, o))});
      }
    }
  }
}

}  // namespace porpi::exact
