#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "porpi/planner/agent.hpp"

namespace porpi {

struct EpisodeConfig {
  int max_steps = 100;  // primitive steps
  int particle_count = 200;
  std::uint64_t world_seed = 1;
  std::uint64_t agent_seed = 2;
};

struct PrimitiveRecord {
  int step = 0;  // global primitive step index
  Vec3 position = Vec3::Zero();
  std::uint32_t visited = 0;
  bool terminal = false;
  double reward = 0.0;
  RewardBreakdown breakdown;
  Observation observation;
};

struct StepRecord {
  int index = 0;
  int start_step = 0;
  Vec3 belief_mean = Vec3::Zero();
  double belief_spread = 0.0;
  std::size_t particle_count = 0;
  MacroAction macro;
  MacroObservation observation;
  std::vector<PrimitiveRecord> primitives;
  double reward = 0.0;             // undiscounted sum over the macro
  double discounted_reward = 0.0;  // discounted from step 0 of the episode
  double cumulative_return = 0.0;
  double cumulative_discounted_return = 0.0;
  double planning_ms = 0.0;
  int simulations = 0;
  std::size_t tree_size = 0;
  bool depleted = false;
};

struct EpisodeTrace {
  std::string planner;
  std::string scenario;
  std::uint64_t world_seed = 0;
  std::uint64_t agent_seed = 0;
  double discount = 0.0;
  int max_steps = 0;
  std::vector<StepRecord> steps;
  double total_return = 0.0;
  double discounted_return = 0.0;
  int primitive_steps = 0;
  bool terminal = false;
  bool success = false;
  bool depletion_flagged = false;
};

/// Plan / execute / observe loop until a terminal state or the step budget.
/// The world consumes its own rng stream (world_seed) so different agents
/// face the same environment randomness.
EpisodeTrace run_episode(const PomdpModel& world, Agent& agent, const EpisodeConfig& config);

/// run_episode with a PorpiAgent built from the arguments.
EpisodeTrace plan_and_execute(const PomdpModel& world, const PlannerConfig& planner,
                              const ActionSampler& sampler, const ValueHeuristic& heuristic,
                              const EpisodeConfig& config);

}  // namespace porpi
