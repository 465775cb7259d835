#pragma once

#include "porpi/planner/agent.hpp"

namespace porpi::baselines {

/// Tree search with a fixed uniform reference over each node's candidates:
///   Psi(h a) = (1/eta) log(1/|children|) + R(h a) + D(h a),
/// where D(h a) here is the running mean of gamma^steps V(child). Widening and
/// sampling are those of the preference planner.
class RefSolverPlanner {
 public:
  RefSolverPlanner(PlannerConfig config, const ActionSampler& sampler, const ValueHeuristic& heuristic);

  double simulate(HistoryNode& node, const State& s, int depth, const PomdpModel& model, Rng& rng) const;
  PlanStats plan(HistoryNode& root, const PomdpModel& model, Rng& rng) const;
  const PlannerConfig& config() const { return config_; }

 private:
  void ensure_child(HistoryNode& node, const State& s, const PomdpModel& model, Rng& rng) const;
  void refresh(HistoryNode& node) const;

  PlannerConfig config_;
  const ActionSampler& sampler_;
  const ValueHeuristic& heuristic_;
};

class RefSolverAgent final : public Agent {
 public:
  RefSolverAgent(PlannerConfig config, const ActionSampler& sampler, const ValueHeuristic& heuristic);

  std::string name() const override { return "refsolver"; }
  void reset(BeliefParticleSet initial) override;
  Decision decide(const PomdpModel& model, Rng& rng) override;
  bool observe(const PomdpModel& model, const MacroAction& m, const MacroObservation& mo, Rng& rng) override;
  const BeliefParticleSet& belief() const override { return root_->particles; }
  const HistoryNode& root() const { return *root_; }

 private:
  RefSolverPlanner planner_;
  std::unique_ptr<HistoryNode> root_;
};

}  // namespace porpi::baselines
