#pragma once

#include <string>
#include <vector>

#include "porpi/core/model.hpp"
#include "porpi/env/navigation.hpp"

namespace porpi::env {

struct MazeScenario {
  std::string name = "maze";
  int dimension = 3;
  Box arena;
  std::vector<Box> walls;
  std::vector<Box> danger;
  std::vector<Box> landmarks;
  std::vector<Box> goals;
  std::vector<Vec3> spawns;
  std::vector<double> spawn_prior;
  double speed = 1.0;
  double noise_scale = 0.02;  // covariance I * noise_scale * speed
  double goal_reward = 2000.0;
  double danger_reward = -500.0;
  double step_reward = -5.0;
  double discount = 0.99;
  double observation_grid = 0.5;

  /// DomainError on inconsistent geometry or parameters.
  void validate() const;
};

/// Point agent in a box maze. Moves slide along walls, landmarks reveal the
/// exact position, danger zones and goals end the episode.
class MazeModel final : public PomdpModel, public NavigationDomain {
 public:
  explicit MazeModel(MazeScenario scenario);

  const MazeScenario& scenario() const { return scenario_; }

  double discount() const override { return scenario_.discount; }
  double reward_bound() const override;
  State sample_initial(Rng& rng) const override;
  Transition transition(const State& s, const Action& a, Rng& rng) const override;
  Transition transition_noiseless(const State& s, const Action& a) const override;
  Observation observe(const State& next, const Action& a, Rng& rng) const override;
  double observation_log_likelihood(const State& next, const Action& a,
                                    const Observation& o) const override;
  Action sample_random_action(Rng& rng) const override;
  void validate(const State& s, const Action& a) const override;
  bool is_success(const State& s) const override { return (s.visited & 1u) != 0; }
  RewardBreakdown reward_breakdown(const State& s, const Action& a, const State& next) const override;

  int dimension() const override { return scenario_.dimension; }
  Box bounds() const override { return scenario_.arena; }
  double speed() const override { return scenario_.speed; }
  bool is_free(const Vec3& p, double clearance) const override;
  std::vector<Vec3> targets() const override;
  std::vector<int> candidate_targets(const State& s) const override;
  std::vector<int> heuristic_targets(const State& s) const override;

  /// Moves from p by d, sliding along walls and clamped to the arena.
  Vec3 slide(const Vec3& p, const Vec3& d) const;
  bool in_landmark(const Vec3& p) const;

 protected:
  double observation_grid() const override { return scenario_.observation_grid; }

 private:
  Transition settle(const State& s, const Vec3& next) const;

  MazeScenario scenario_;
};

}  // namespace porpi::env
