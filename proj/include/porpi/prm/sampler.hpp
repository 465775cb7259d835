#pragma once

#include <memory>
#include <vector>

#include "porpi/planner/sampler.hpp"
#include "porpi/prm/roadmap.hpp"

namespace porpi::prm {

/// Walks a polyline in steps of exactly `step`: each step ends at the first
/// point further along the polyline at distance `step`; the last step points
/// at the final vertex and may overshoot it. At most `max_length` steps.
MacroAction polyline_to_macro(const std::vector<Vec3>& polyline, double step, int max_length);

/// Heuristic action sampler: picks a target by the scenario rule and returns
/// the truncated roadmap path toward it.
class PrmActionSampler final : public ActionSampler {
 public:
  PrmActionSampler(std::shared_ptr<const Roadmap> roadmap, std::shared_ptr<const env::NavigationDomain> domain,
                   int max_macro_length);

  std::optional<MacroAction> sample(const HistoryNode& h, const State& s, const PomdpModel& model,
                                    Rng& rng) const override;
  /// Macro toward one target; nullopt if the target is unreachable from s.
  std::optional<MacroAction> macro_toward(const State& s, int target, const PomdpModel& model) const;

  const Roadmap& roadmap() const { return *roadmap_; }
  int max_macro_length() const { return max_macro_length_; }

 private:
  const env::NavigationDomain& domain_for(const PomdpModel& model) const;

  std::shared_ptr<const Roadmap> roadmap_;
  std::shared_ptr<const env::NavigationDomain> domain_;
  int max_macro_length_;
};

}  // namespace porpi::prm
