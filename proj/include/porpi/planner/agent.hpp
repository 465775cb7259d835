#pragma once

#include <memory>
#include <string>

#include "porpi/core/belief_update.hpp"
#include "porpi/planner/planner.hpp"

namespace porpi {

struct Decision {
  MacroAction macro;
  PlanStats stats;
};

/// Online decision maker driven by the episode loop.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual std::string name() const = 0;
  virtual void reset(BeliefParticleSet initial) = 0;
  virtual Decision decide(const PomdpModel& model, Rng& rng) = 0;
  /// Incorporates the executed macro and its observation. Returns true when
  /// the particle filter depleted and fell back to the transition prior.
  virtual bool observe(const PomdpModel& model, const MacroAction& m, const MacroObservation& mo,
                       Rng& rng) = 0;
  virtual const BeliefParticleSet& belief() const = 0;
};

/// Replaces `root` with its (m, mo) grandchild, creating it if absent, and adds
/// particles filtered from the old root belief.
std::unique_ptr<HistoryNode> advance_root(std::unique_ptr<HistoryNode> root, const MacroAction& m,
                                          const MacroObservation& mo, const PomdpModel& model,
                                          Rng& rng, const BeliefUpdateOptions& options,
                                          bool& depleted);

class PorpiAgent final : public Agent {
 public:
  PorpiAgent(PlannerConfig config, const ActionSampler& sampler, const ValueHeuristic& heuristic);

  std::string name() const override { return "porpi"; }
  void reset(BeliefParticleSet initial) override;
  Decision decide(const PomdpModel& model, Rng& rng) override;
  bool observe(const PomdpModel& model, const MacroAction& m, const MacroObservation& mo,
               Rng& rng) override;
  const BeliefParticleSet& belief() const override { return root_->particles; }

  const HistoryNode& root() const { return *root_; }
  const PreferencePlanner& planner() const { return planner_; }

 private:
  PreferencePlanner planner_;
  std::unique_ptr<HistoryNode> root_;
};

}  // namespace porpi
