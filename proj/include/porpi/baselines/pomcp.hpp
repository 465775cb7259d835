#pragma once

#include <map>
#include <memory>
#include <vector>

#include "porpi/planner/agent.hpp"

namespace porpi::baselines {

struct PomcpConfig {
  /// UCB1 constant; negative means Rmax of the planning model.
  double exploration = -1.0;
  int simulations = 1000;
  double time_budget_ms = 0.0;
  int max_depth = 30;  // primitive steps, also bounds rollouts
  int particle_target = 200;
  std::size_t particle_capacity = 4096;
};

/// `count` direction macros of `length` identical primitives of norm `speed`:
/// equal azimuths in 2D, a Fibonacci sphere in 3D.
std::vector<MacroAction> direction_macros(int dimension, double speed, int count, int length);

struct UctNode;

struct UctEdge {
  MacroAction macro;
  int visits = 0;
  double mean = 0.0;        // Q(h a)
  double return_sum = 0.0;  // sum of backed-up returns, for audit
  std::map<Key, std::unique_ptr<UctNode>> children;
};

struct UctNode {
  int visits = 0;
  BeliefParticleSet particles;
  std::vector<UctEdge> edges;

  explicit UctNode(std::size_t capacity = 4096) : particles(capacity) {}
};

/// UCT over a fixed macro set with random-macro rollouts.
class PomcpPlanner {
 public:
  PomcpPlanner(PomcpConfig config, std::vector<MacroAction> actions);

  double simulate(UctNode& node, const State& s, int depth, const PomdpModel& model, Rng& rng) const;
  PlanStats plan(UctNode& root, const PomdpModel& model, Rng& rng) const;
  double rollout(const State& s, int depth, const PomdpModel& model, Rng& rng) const;
  /// Unvisited edges first (lowest index), then the UCB1 maximiser.
  int select(const UctNode& node, double c) const;
  /// Most-visited edge, lowest index on ties.
  int best(const UctNode& node) const;

  const PomcpConfig& config() const { return config_; }
  const std::vector<MacroAction>& actions() const { return actions_; }

 private:
  void expand(UctNode& node) const;
  double exploration(const PomdpModel& model) const;

  PomcpConfig config_;
  std::vector<MacroAction> actions_;
};

struct PomcpAuditReport {
  std::size_t nodes = 0;
  double max_mean_error = 0.0;
  std::size_t visit_violations = 0;
  bool ok() const { return max_mean_error <= 1e-9 && visit_violations == 0; }
};

/// Checks every edge mean against return_sum / visits and N(h) = sum N(h a).
PomcpAuditReport audit_pomcp_tree(const UctNode& root);

class PomcpAgent final : public Agent {
 public:
  PomcpAgent(PomcpConfig config, std::vector<MacroAction> actions);

  std::string name() const override { return "pomcp"; }
  void reset(BeliefParticleSet initial) override;
  Decision decide(const PomdpModel& model, Rng& rng) override;
  bool observe(const PomdpModel& model, const MacroAction& m, const MacroObservation& mo, Rng& rng) override;
  const BeliefParticleSet& belief() const override { return root_->particles; }
  const UctNode& root() const { return *root_; }

 private:
  PomcpPlanner planner_;
  std::unique_ptr<UctNode> root_;
};

}  // namespace porpi::baselines
