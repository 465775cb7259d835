#include "porpi/baselines/refsolver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "porpi/core/macro.hpp"

namespace porpi::baselines {

RefSolverPlanner::RefSolverPlanner(PlannerConfig config, const ActionSampler& sampler,
                                   const ValueHeuristic& heuristic)
    : config_(config), sampler_(sampler), heuristic_(heuristic) {
  config_.validate();
}

void RefSolverPlanner::ensure_child(HistoryNode& node, const State& s, const PomdpModel& model, Rng& rng) const {
  if (!node.edges.empty()) return;
  std::optional<MacroAction> candidate = sampler_.sample(node, s, model, rng);
  if (!candidate || candidate->empty()) candidate = random_short_macro(model, config_.max_macro_length, rng);
  if (candidate->length() > config_.max_macro_length)
    candidate->primitives.resize(static_cast<std::size_t>(config_.max_macro_length));
  Key key = model.macro_action_key(*candidate);
  node.add_edge(std::move(*candidate), std::move(key));
}

void RefSolverPlanner::refresh(HistoryNode& node) const {
  const double log_ref = -std::log(static_cast<double>(node.child_count())) / config_.temperature;
  for (auto& e : node.edges) e.preference = log_ref + e.mean_reward + e.mean_value;
  node.value = logsumexp_value(node, config_.temperature);
}

double RefSolverPlanner::simulate(HistoryNode& node, const State& s, int depth, const PomdpModel& model,
                                  Rng& rng) const {
  if (s.terminal) return 0.0;
  if (depth > config_.max_depth) {
    const double vmax = model.value_bound();
    return std::clamp(heuristic_.value(node, s, model), -vmax, vmax);
  }
  if (depth > 0) node.particles.insert(s, rng);
  ++node.visits;
  if (progressive_widen(node, config_, sampler_, s, model, rng) == WidenOutcome::SamplerFailed) {
    MacroAction fallback = random_short_macro(model, config_.max_macro_length, rng);
    Key key = model.macro_action_key(fallback);
    if (node.find_edge(key) < 0) node.add_edge(std::move(fallback), std::move(key));
  }
  ensure_child(node, s, model, rng);
  refresh(node);

  const auto a = static_cast<std::size_t>(sample_pref_softmax(node, config_.temperature, rng));
  const State start = node.particles.empty() ? s : node.particles.sample(rng);
  const MacroStep step = macro_step(model, start, node.edges[a].macro, rng);
  HistoryNode& child =
      node.edges[a].child_or_create(model.macro_observation_key(step.observation), config_.particle_capacity);
  ActionEdge& edge = node.edges[a];
  ++edge.visits;
  const double n = static_cast<double>(edge.visits);
  edge.mean_reward += (step.discounted_reward - edge.mean_reward) / n;
  const double child_value =
      simulate(child, step.final_state, depth + node.edges[a].macro.length(), model, rng);
  node.edges[a].mean_value +=
      (std::pow(model.discount(), step.steps_survived) * child_value - node.edges[a].mean_value) / n;
  refresh(node);
  return node.value;
}

PlanStats RefSolverPlanner::plan(HistoryNode& root, const PomdpModel& model, Rng& rng) const {
  using Clock = std::chrono::steady_clock;
  if (root.particles.empty()) throw ModelContractError("root belief holds no particles");
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double, std::milli>(Clock::now() - start).count(); };
  PlanStats stats;
  const bool timed = config_.time_budget_ms > 0.0;
  while (timed ? elapsed() < config_.time_budget_ms : stats.simulations < config_.simulations) {
    simulate(root, root.particles.sample(rng), 0, model, rng);
    ++stats.simulations;
  }
  if (root.edges.empty()) {
    ensure_child(root, root.particles.sample(rng), model, rng);
    refresh(root);
  }
  stats.elapsed_ms = elapsed();
  stats.tree_size = count_nodes(root);
  return stats;
}

RefSolverAgent::RefSolverAgent(PlannerConfig config, const ActionSampler& sampler, const ValueHeuristic& heuristic)
    : planner_(config, sampler, heuristic), root_(std::make_unique<HistoryNode>(config.particle_capacity)) {}

void RefSolverAgent::reset(BeliefParticleSet initial) {
  root_ = std::make_unique<HistoryNode>(planner_.config().particle_capacity);
  root_->particles = std::move(initial);
}

Decision RefSolverAgent::decide(const PomdpModel& model, Rng& rng) {
  Decision d;
  d.stats = planner_.plan(*root_, model, rng);
  d.macro = root_->edges[static_cast<std::size_t>(best_edge(*root_))].macro;
  return d;
}

bool RefSolverAgent::observe(const PomdpModel& model, const MacroAction& m, const MacroObservation& mo, Rng& rng) {
  bool depleted = false;
  BeliefUpdateOptions options;
  options.target_count = planner_.config().particle_target;
  root_ = advance_root(std::move(root_), m, mo, model, rng, options, depleted);
  return depleted;
}

}  // namespace porpi::baselines
