#pragma once

#include <string>

#include "porpi/core/model.hpp"
#include "porpi/planner/sampler.hpp"
#include "porpi/planner/tree.hpp"

namespace porpi {

struct PlannerConfig {
  double widening_coefficient = 1.0;  // kappa
  double widening_exponent = 0.5;     // alpha
  int max_depth = 30;                 // D_max, in primitive steps
  double temperature = 0.003;         // eta
  int max_macro_length = 8;
  int simulations = 1000;
  /// Wall-clock budget per decision; 0 means the simulation count rules.
  double time_budget_ms = 0.0;
  int particle_target = 200;
  std::size_t particle_capacity = 4096;

  /// Throws DomainError on out-of-range parameters.
  void validate() const;
};

/// kappa N^alpha > |children|.
bool widening_allowed(int children, int visits, const PlannerConfig& config);

enum class WidenOutcome { NotNeeded, Added, Duplicate, SamplerFailed };

WidenOutcome progressive_widen(HistoryNode& node, const PlannerConfig& config,
                               const ActionSampler& sampler, const State& s,
                               const PomdpModel& model, Rng& rng);

/// A straight macro of 1..3 copies of one random primitive.
MacroAction random_short_macro(const PomdpModel& model, int max_length, Rng& rng);

struct PlanStats {
  int simulations = 0;
  double elapsed_ms = 0.0;
  std::size_t tree_size = 0;
};

/// Preference-iteration tree search over macro actions.
class PreferencePlanner {
 public:
  PreferencePlanner(PlannerConfig config, const ActionSampler& sampler,
                    const ValueHeuristic& heuristic);

  /// One recursive descent; returns the node value after the backup.
  double simulate(HistoryNode& node, const State& s, int depth, const PomdpModel& model,
                  Rng& rng) const;

  /// Runs simulations from the root until the budget is spent. Guarantees the
  /// root has at least one child on return.
  PlanStats plan(HistoryNode& root, const PomdpModel& model, Rng& rng) const;

  /// Heuristic clipped to [-Vmax, Vmax]; 0 at terminal states.
  double leaf_value(const HistoryNode& node, const State& s, const PomdpModel& model) const;

  const PlannerConfig& config() const { return config_; }

 private:
  void ensure_child(HistoryNode& node, const State& s, const PomdpModel& model, Rng& rng) const;

  PlannerConfig config_;
  const ActionSampler& sampler_;
  const ValueHeuristic& heuristic_;
};

struct TreeAuditReport {
  std::size_t nodes = 0;
  std::size_t value_violations = 0;
  std::size_t widening_violations = 0;
  std::size_t visit_violations = 0;
  double max_value_error = 0.0;

  bool ok() const { return value_violations == 0 && widening_violations == 0 && visit_violations == 0; }
  std::string summary() const;
};

/// Checks V(h) = L_eta Psi(h .), |children| <= kappa N^alpha + 1 and
/// N(h) = sum N(h a) on every node.
TreeAuditReport audit_tree(const HistoryNode& root, const PlannerConfig& config);

}  // namespace porpi
