#pragma once

#include <memory>
#include <string>
#include <vector>

#include "porpi/core/model.hpp"
#include "porpi/env/heightmap.hpp"
#include "porpi/env/navigation.hpp"

namespace porpi::env {

/// From `step` on, exactly `zones` are active (until the next event).
struct NfzEvent {
  int step = 0;
  std::vector<Box> zones;
};

struct RescueScenario {
  std::string name = "rescue";
  Box bounds;
  Heightmap terrain;
  Vec3 start = Vec3::Zero();
  std::vector<Ball> objectives;
  std::vector<NfzEvent> schedule;
  double speed = 2.0;
  double transition_noise = 0.25;  // covariance I * transition_noise * speed
  double observation_noise = 0.2;  // covariance I * observation_noise
  double objective_reward = 2000.0;
  double completion_reward = 20000.0;
  double collision_reward = -2000.0;
  double nfz_reward = -20.0;
  double step_reward = -5.0;
  double discount = 0.99;
  double observation_grid = 4.0;
  double terrain_clearance = 1.0;  // roadmap clearance above the terrain

  void validate() const;
  /// Zones active at `step`: those of the last event with event.step <= step.
  const std::vector<Box>& active_zones(int step) const;
};

/// Helicopter search-and-rescue mission over a heightmap. Each instance is a
/// frozen view of the no-fly-zone schedule at one step.
class RescueModel final : public PomdpModel, public NavigationDomain {
 public:
  explicit RescueModel(std::shared_ptr<const RescueScenario> scenario, int step = 0);

  const RescueScenario& scenario() const { return *scenario_; }
  int step() const { return step_; }
  const std::vector<Box>& active_zones() const { return *active_; }
  bool in_active_nfz(const Vec3& p) const;

  double discount() const override { return scenario_->discount; }
  double reward_bound() const override;
  State sample_initial(Rng& rng) const override;
  Transition transition(const State& s, const Action& a, Rng& rng) const override;
  Transition transition_noiseless(const State& s, const Action& a) const override;
  Observation observe(const State& next, const Action& a, Rng& rng) const override;
  double observation_log_likelihood(const State& next, const Action& a,
                                    const Observation& o) const override;
  Action sample_random_action(Rng& rng) const override;
  void validate(const State& s, const Action& a) const override;
  Key macro_observation_key(const MacroObservation& mo) const override;
  bool is_success(const State& s) const override;
  RewardBreakdown reward_breakdown(const State& s, const Action& a, const State& next) const override;
  std::shared_ptr<const PomdpModel> at_step(int step) const override;

  int dimension() const override { return 3; }
  Box bounds() const override { return scenario_->bounds; }
  double speed() const override { return scenario_->speed; }
  bool is_free(const Vec3& p, double clearance) const override;
  std::vector<Vec3> targets() const override;
  std::vector<int> candidate_targets(const State& s) const override;
  std::vector<int> heuristic_targets(const State& s) const override;

 protected:
  double observation_grid() const override { return scenario_->observation_grid; }

 private:
  Transition settle(const State& s, const Vec3& next) const;

  std::shared_ptr<const RescueScenario> scenario_;
  int step_;
  const std::vector<Box>* active_;
};

}  // namespace porpi::env
