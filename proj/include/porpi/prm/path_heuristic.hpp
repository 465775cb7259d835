#pragma once

#include <memory>

#include "porpi/planner/sampler.hpp"
#include "porpi/prm/roadmap.hpp"

namespace porpi::prm {

/// Noiseless rollout of a greedy roadmap tour over the domain's heuristic
/// targets (nearest first), discounted and clipped to [-Vmax, Vmax].
class PathRolloutHeuristic final : public ValueHeuristic {
 public:
  PathRolloutHeuristic(std::shared_ptr<const Roadmap> roadmap, std::shared_ptr<const env::NavigationDomain> domain,
                       int max_steps = 200);

  double value(const HistoryNode& h, const State& s, const PomdpModel& model) const override;

 private:
  std::shared_ptr<const Roadmap> roadmap_;
  std::shared_ptr<const env::NavigationDomain> domain_;
  int max_steps_;
};

}  // namespace porpi::prm
