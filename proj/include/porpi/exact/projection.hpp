#pragma once

#include <vector>

#include "porpi/exact/covering.hpp"

namespace porpi::exact {

struct Successor {
  int observation = 0;
  double probability = 0.0;
  int next = 0;  // cover index phi(b, a, o)
};

/// The POMDP restricted to a cover: exact expected rewards and projected
/// successor distributions for every (cover member, action).
class CoverProjection {
 public:
  CoverProjection(const TabularPomdp& model, CoveringSet cover);

  int belief_count() const { return static_cast<int>(cover_.size()); }
  int action_count() const { return model_.action_count(); }
  double discount() const { return model_.discount(); }
  double value_bound() const { return model_.value_bound(); }

  double reward(int b, int a) const { return rewards_(b, a); }
  const Eigen::MatrixXd& rewards() const { return rewards_; }
  /// Observations with positive probability, in observation order.
  const std::vector<Successor>& successors(int b, int a) const {
    return successors_[static_cast<std::size_t>(b * action_count() + a)];
  }

  const TabularPomdp& model() const { return model_; }
  const CoveringSet& cover() const { return cover_; }

 private:
  const TabularPomdp& model_;
  CoveringSet cover_;
  Eigen::MatrixXd rewards_;
  std::vector<std::vector<Successor>> successors_;
};

}  // namespace porpi::exact
