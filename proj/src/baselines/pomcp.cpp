#include "porpi/baselines/pomcp.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "porpi/core/macro.hpp"

namespace porpi::baselines {

std::vector<MacroAction> direction_macros(int dimension, double speed, int count, int length) {
  if (count < 1 || length < 1) throw DomainError("need at least one direction and one step");
  std::vector<MacroAction> out;
  for (int i = 0; i < count; ++i) {
    Vec3 d;
    if (dimension == 2) {
      const double phi = 2.0 * std::numbers::pi * i / count;
      d = Vec3(std::cos(phi), std::sin(phi), 0.0);
    } else {
      const double z = 1.0 - 2.0 * (i + 0.5) / count;
      const double r = std::sqrt(1.0 - z * z);
      const double phi = std::numbers::pi * (3.0 - std::sqrt(5.0)) * i;
      d = Vec3(r * std::cos(phi), r * std::sin(phi), z);
    }
    MacroAction m;
    m.primitives.assign(static_cast<std::size_t>(length), Action::move(d * speed));
    out.push_back(std::move(m));
  }
  return out;
}

PomcpPlanner::PomcpPlanner(PomcpConfig config, std::vector<MacroAction> actions)
    : config_(config), actions_(std::move(actions)) {
  if (actions_.empty()) throw DomainError("POMCP needs a nonempty action set");
  if (config_.max_depth < 1) throw DomainError("max depth must be >= 1");
}

double PomcpPlanner::exploration(const PomdpModel& model) const {
  return config_.exploration >= 0.0 ? config_.exploration : model.reward_bound();
}

void PomcpPlanner::expand(UctNode& node) const {
  node.edges.resize(actions_.size());
  for (std::size_t i = 0; i < actions_.size(); ++i) node.edges[i].macro = actions_[i];
}

int PomcpPlanner::select(const UctNode& node, double c) const {
  int best_i = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  const double log_n = std::log(static_cast<double>(std::max(1, node.visits)));
  for (std::size_t i = 0; i < node.edges.size(); ++i) {
    const UctEdge& e = node.edges[i];
    if (e.visits == 0) return static_cast<int>(i);
    const double score = e.mean + c * std::sqrt(log_n / e.visits);
    if (score > best_score) {
      best_score = score;
      best_i = static_cast<int>(i);
    }
  }
  return best_i;
}

int PomcpPlanner::best(const UctNode& node) const {
  int best_i = 0;
  for (std::size_t i = 1; i < node.edges.size(); ++i)
    if (node.edges[i].visits > node.edges[static_cast<std::size_t>(best_i)].visits) best_i = static_cast<int>(i);
  return best_i;
}

double PomcpPlanner::rollout(const State& s, int depth, const PomdpModel& model, Rng& rng) const {
  std::uniform_int_distribution<std::size_t> pick(0, actions_.size() - 1);
  State state = s;
  double total = 0.0;
  double discount = 1.0;
  while (!state.terminal && depth < config_.max_depth) {
    const MacroStep step = macro_step(model, state, actions_[pick(rng)], rng);
    total += discount * step.discounted_reward;
    discount *= std::pow(model.discount(), step.steps_survived);
    depth += step.steps_survived;
    state = step.final_state;
  }
  return total;
}

double PomcpPlanner::simulate(UctNode& node, const State& s, int depth, const PomdpModel& model, Rng& rng) const {
  if (s.terminal || depth >= config_.max_depth) return 0.0;
  if (depth > 0) node.particles.insert(s, rng);
  if (node.edges.empty()) {
    expand(node);
    if (depth > 0) return rollout(s, depth, model, rng);
  }
  const auto a = static_cast<std::size_t>(select(node, exploration(model)));
  const MacroStep step = macro_step(model, s, node.edges[a].macro, rng);
  auto& slot = node.edges[a].children[model.macro_observation_key(step.observation)];
  if (!slot) slot = std::make_unique<UctNode>(config_.particle_capacity);
  const double ret = step.discounted_reward + std::pow(model.discount(), step.steps_survived) *
                                                  simulate(*slot, step.final_state, depth + step.steps_survived, model, rng);
  UctEdge& edge = node.edges[a];
  ++node.visits;
  ++edge.visits;
  edge.return_sum += ret;
  edge.mean += (ret - edge.mean) / edge.visits;
  return ret;
}

PlanStats PomcpPlanner::plan(UctNode& root, const PomdpModel& model, Rng& rng) const {
  using Clock = std::chrono::steady_clock;
  if (root.particles.empty()) throw ModelContractError("root belief holds no particles");
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double, std::milli>(Clock::now() - start).count(); };
  PlanStats stats;
  if (root.edges.empty()) expand(root);
  const bool timed = config_.time_budget_ms > 0.0;
  while (timed ? elapsed() < config_.time_budget_ms : stats.simulations < config_.simulations) {
    simulate(root, root.particles.sample(rng), 0, model, rng);
    ++stats.simulations;
  }
  stats.elapsed_ms = elapsed();
  std::vector<const UctNode*> stack{&root};
  while (!stack.empty()) {
    const UctNode* n = stack.back();
    stack.pop_back();
    ++stats.tree_size;
    for (const auto& e : n->edges)
      for (const auto& [key, child] : e.children) stack.push_back(child.get());
  }
  return stats;
}

PomcpAuditReport audit_pomcp_tree(const UctNode& root) {
  PomcpAuditReport report;
  std::vector<const UctNode*> stack{&root};
  while (!stack.empty()) {
    const UctNode* n = stack.back();
    stack.pop_back();
    ++report.nodes;
    int visits = 0;
    for (const auto& e : n->edges) {
      visits += e.visits;
      if (e.visits > 0) {
        const double mean = e.return_sum / e.visits;
        report.max_mean_error =
            std::max(report.max_mean_error, std::abs(mean - e.mean) / std::max(1.0, std::abs(mean)));
      }
      for (const auto& [key, child] : e.children) stack.push_back(child.get());
    }
    if (visits != n->visits) ++report.visit_violations;
  }
  return report;
}

PomcpAgent::PomcpAgent(PomcpConfig config, std::vector<MacroAction> actions)
    : planner_(config, std::move(actions)), root_(std::make_unique<UctNode>(config.particle_capacity)) {}

void PomcpAgent::reset(BeliefParticleSet initial) {
  root_ = std::make_unique<UctNode>(planner_.config().particle_capacity);
  root_->particles = std::move(initial);
}

Decision PomcpAgent::decide(const PomdpModel& model, Rng& rng) {
  root_->edges.clear();
  root_->visits = 0;
  Decision d;
  d.stats = planner_.plan(*root_, model, rng);
  d.macro = root_->edges[static_cast<std::size_t>(planner_.best(*root_))].macro;
  return d;
}

bool PomcpAgent::observe(const PomdpModel& model, const MacroAction& m, const MacroObservation& mo, Rng& rng) {
  BeliefUpdateOptions options;
  options.target_count = planner_.config().particle_target;
  FilteredBelief f = belief_update_with_fallback(root_->particles, m, mo, model, rng, options);
  root_ = std::make_unique<UctNode>(planner_.config().particle_capacity);
  root_->particles = std::move(f.particles);
  return f.depleted;
}

}  // namespace porpi::baselines
