#pragma once

#include "porpi/planner/agent.hpp"

namespace porpi::baselines {

/// Samples one particle and returns the sampler's macro for it, or a random
/// short macro when the sampler fails.
MacroAction refpol_step(const BeliefParticleSet& b, const ActionSampler& sampler, const PomdpModel& model,
                        int max_macro_length, Rng& rng);

/// Executes the heuristic sampler's proposals without planning.
class RefPolAgent final : public Agent {
 public:
  RefPolAgent(const ActionSampler& sampler, int max_macro_length, int particle_target = 200);

  std::string name() const override { return "refpol"; }
  void reset(BeliefParticleSet initial) override { belief_ = std::move(initial); }
  Decision decide(const PomdpModel& model, Rng& rng) override;
  bool observe(const PomdpModel& model, const MacroAction& m, const MacroObservation& mo, Rng& rng) override;
  const BeliefParticleSet& belief() const override { return belief_; }

 private:
  const ActionSampler& sampler_;
  int max_macro_length_;
  int particle_target_;
  BeliefParticleSet belief_;
};

}  // namespace porpi::baselines
