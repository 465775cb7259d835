#include "porpi/planner/episode.hpp"

#include <algorithm>

#include "porpi/core/macro.hpp"

namespace porpi {

EpisodeTrace run_episode(const PomdpModel& world, Agent& agent, const EpisodeConfig& config) {
  Rng world_rng(config.world_seed);
  Rng agent_rng(config.agent_seed);

  EpisodeTrace trace;
  trace.planner = agent.name();
  trace.world_seed = config.world_seed;
  trace.agent_seed = config.agent_seed;
  trace.discount = world.discount();
  trace.max_steps = config.max_steps;

  State truth = world.sample_initial(world_rng);
  BeliefParticleSet initial(4096, config.agent_seed);
  for (int i = 0; i < config.particle_count; ++i) initial.push_back(world.sample_initial(agent_rng));
  agent.reset(std::move(initial));

  const double gamma = world.discount();
  double discount = 1.0;
  int step = 0;
  while (!truth.terminal && step < config.max_steps) {
    const auto planning_model = world.at_step(step);
    StepRecord record;
    record.index = static_cast<int>(trace.steps.size());
    record.start_step = step;
    record.belief_mean = agent.belief().mean_position();
    record.belief_spread = agent.belief().position_spread();
    record.particle_count = agent.belief().size();

    Decision decision = agent.decide(*planning_model, agent_rng);
    record.planning_ms = decision.stats.elapsed_ms;
    record.simulations = decision.stats.simulations;
    record.tree_size = decision.stats.tree_size;

    MacroAction executed = decision.macro;
    const int remaining = config.max_steps - step;
    if (executed.length() > remaining) executed.primitives.resize(static_cast<std::size_t>(remaining));
    record.macro = executed;

    for (const auto& a : executed.primitives) {
      const auto model_now = world.at_step(step);
      const State before = truth;
      StepSample sample = generative_step(*model_now, truth, a, world_rng);
      PrimitiveRecord p;
      p.step = step;
      p.position = sample.next.position;
      p.visited = sample.next.visited;
      p.terminal = sample.next.terminal;
      p.reward = sample.reward;
      p.breakdown = model_now->reward_breakdown(before, a, sample.next);
      p.observation = sample.observation;
      record.primitives.push_back(p);
      record.observation.primitives.push_back(sample.observation);
      record.reward += sample.reward;
      record.discounted_reward += discount * sample.reward;
      discount *= gamma;
      truth = std::move(sample.next);
      ++step;
      if (truth.terminal) break;
    }
    trace.total_return += record.reward;
    trace.discounted_return += record.discounted_reward;
    record.cumulative_return = trace.total_return;
    record.cumulative_discounted_return = trace.discounted_return;

    if (!truth.terminal && step < config.max_steps) {
      record.depleted = agent.observe(*planning_model, executed, record.observation, agent_rng);
      trace.depletion_flagged = trace.depletion_flagged || record.depleted;
    }
    trace.steps.push_back(std::move(record));
  }
  trace.primitive_steps = step;
  trace.terminal = truth.terminal;
  trace.success = world.is_success(truth);
  return trace;
}

EpisodeTrace plan_and_execute(const PomdpModel& world, const PlannerConfig& planner,
                              const ActionSampler& sampler, const ValueHeuristic& heuristic,
                              const EpisodeConfig& config) {
  PorpiAgent agent(planner, sampler, heuristic);
  return run_episode(world, agent, config);
}

}  // namespace porpi
