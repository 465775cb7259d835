#include "porpi/planner/agent.hpp"

namespace porpi {

std::unique_ptr<HistoryNode> advance_root(std::unique_ptr<HistoryNode> root, const MacroAction& m,
                                          const MacroObservation& mo, const PomdpModel& model,
                                          Rng& rng, const BeliefUpdateOptions& options,
                                          bool& depleted) {
  FilteredBelief filtered = belief_update_with_fallback(root->particles, m, mo, model, rng, options);
  depleted = filtered.depleted;

  const std::size_t capacity = root->particles.capacity();
  std::unique_ptr<HistoryNode> next;
  const int edge = root->find_edge(model.macro_action_key(m));
  if (edge >= 0) {
    auto& children = root->edges[static_cast<std::size_t>(edge)].children;
    auto it = children.find(model.macro_observation_key(mo));
    if (it != children.end()) next = std::move(it->second);
  }
  if (!next) next = std::make_unique<HistoryNode>(capacity);
  // Simulated particles may be stale once the filter fell back to the prior.
  if (depleted) next->particles = BeliefParticleSet(capacity, root->particles.seed_tag());
  for (const auto& s : filtered.particles) next->particles.insert(s, rng);
  return next;
}

PorpiAgent::PorpiAgent(PlannerConfig config, const ActionSampler& sampler,
                       const ValueHeuristic& heuristic)
    : planner_(config, sampler, heuristic),
      root_(std::make_unique<HistoryNode>(config.particle_capacity)) {}

void PorpiAgent::reset(BeliefParticleSet initial) {
  root_ = std::make_unique<HistoryNode>(planner_.config().particle_capacity);
  root_->particles = std::move(initial);
}

Decision PorpiAgent::decide(const PomdpModel& model, Rng& rng) {
  Decision d;
  d.stats = planner_.plan(*root_, model, rng);
  d.macro = root_->edges[static_cast<std::size_t>(best_edge(*root_))].macro;
  return d;
}

bool PorpiAgent::observe(const PomdpModel& model, const MacroAction& m, const MacroObservation& mo,
                         Rng& rng) {
  bool depleted = false;
  BeliefUpdateOptions options;
  options.target_count = planner_.config().particle_target;
  root_ = advance_root(std::move(root_), m, mo, model, rng, options, depleted);
  return depleted;
}

}  // namespace porpi
