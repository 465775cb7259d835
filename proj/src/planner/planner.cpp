#include "porpi/planner/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "porpi/core/macro.hpp"

namespace porpi {

void PlannerConfig::validate() const {
  if (!(widening_coefficient >= 0.0)) throw DomainError("widening coefficient must be >= 0");
  if (!(widening_exponent > 0.0 && widening_exponent < 1.0))
    throw DomainError("widening exponent must lie in (0, 1)");
  if (max_depth < 1) throw DomainError("max depth must be >= 1");
  if (!(temperature > 0.0)) throw DomainError("temperature must be > 0");
  if (max_macro_length < 1) throw DomainError("max macro length must be >= 1");
  if (simulations < 0 || time_budget_ms < 0.0) throw DomainError("negative planning budget");
  if (particle_target < 1) throw DomainError("particle target must be >= 1");
}

bool widening_allowed(int children, int visits, const PlannerConfig& config) {
  return static_cast<double>(children) <
         config.widening_coefficient * std::pow(static_cast<double>(visits), config.widening_exponent);
}

WidenOutcome progressive_widen(HistoryNode& node, const PlannerConfig& config,
                               const ActionSampler& sampler, const State& s,
                               const PomdpModel& model, Rng& rng) {
  if (!widening_allowed(node.child_count(), node.visits, config)) return WidenOutcome::NotNeeded;
  std::optional<MacroAction> candidate = sampler.sample(node, s, model, rng);
  if (!candidate || candidate->empty()) return WidenOutcome::SamplerFailed;
  if (candidate->length() > config.max_macro_length)
    candidate->primitives.resize(static_cast<std::size_t>(config.max_macro_length));
  Key key = model.macro_action_key(*candidate);
  if (node.find_edge(key) >= 0) return WidenOutcome::Duplicate;
  node.add_edge(std::move(*candidate), std::move(key));
  return WidenOutcome::Added;
}

MacroAction random_short_macro(const PomdpModel& model, int max_length, Rng& rng) {
  const int upper = std::max(1, std::min(3, max_length));
  const int length = std::uniform_int_distribution<int>(1, upper)(rng);
  const Action a = model.sample_random_action(rng);
  MacroAction m;
  m.primitives.assign(static_cast<std::size_t>(length), a);
  return m;
}

PreferencePlanner::PreferencePlanner(PlannerConfig config, const ActionSampler& sampler,
                                     const ValueHeuristic& heuristic)
    : config_(config), sampler_(sampler), heuristic_(heuristic) {
  config_.validate();
}

double PreferencePlanner::leaf_value(const HistoryNode& node, const State& s,
                                     const PomdpModel& model) const {
  if (s.terminal) return 0.0;
  const double vmax = model.value_bound();
  return std::clamp(heuristic_.value(node, s, model), -vmax, vmax);
}

void PreferencePlanner::ensure_child(HistoryNode& node, const State& s, const PomdpModel& model,
                                     Rng& rng) const {
  if (!node.edges.empty()) return;
  std::optional<MacroAction> candidate = sampler_.sample(node, s, model, rng);
  if (!candidate || candidate->empty()) candidate = random_short_macro(model, config_.max_macro_length, rng);
  if (candidate->length() > config_.max_macro_length)
    candidate->primitives.resize(static_cast<std::size_t>(config_.max_macro_length));
  Key key = model.macro_action_key(*candidate);
  node.add_edge(std::move(*candidate), std::move(key));
}

double PreferencePlanner::simulate(HistoryNode& node, const State& s, int depth,
                                   const PomdpModel& model, Rng& rng) const {
  if (s.terminal) return 0.0;
  if (depth > config_.max_depth) return leaf_value(node, s, model);
  if (depth > 0) node.particles.insert(s, rng);
  ++node.visits;

  if (progressive_widen(node, config_, sampler_, s, model, rng) == WidenOutcome::SamplerFailed) {
    MacroAction fallback = random_short_macro(model, config_.max_macro_length, rng);
    Key key = model.macro_action_key(fallback);
    if (node.find_edge(key) < 0) node.add_edge(std::move(fallback), std::move(key));
  }
  ensure_child(node, s, model, rng);

  const auto a = static_cast<std::size_t>(sample_pref_softmax(node, config_.temperature, rng));
  const State start = node.particles.empty() ? s : node.particles.sample(rng);
  const MacroAction& macro = node.edges[a].macro;
  const MacroStep sample = macro_step(model, start, macro, rng);
  HistoryNode& child = node.edges[a].child_or_create(model.macro_observation_key(sample.observation),
                                                     config_.particle_capacity);

  ActionEdge& edge = node.edges[a];
  ++edge.visits;
  const double n = static_cast<double>(edge.visits);
  edge.mean_reward += (sample.discounted_reward - edge.mean_reward) / n;
  const double child_value = simulate(child, sample.final_state, depth + macro.length(), model, rng);
  edge.mean_value += (child_value - edge.mean_value) / n;
  const double continuation = std::pow(model.discount(), sample.steps_survived);
  edge.preference += -node.value + edge.mean_reward + continuation * edge.mean_value;
  node.value = logsumexp_value(node, config_.temperature);
  return node.value;
}

PlanStats PreferencePlanner::plan(HistoryNode& root, const PomdpModel& model, Rng& rng) const {
  using Clock = std::chrono::steady_clock;
  if (root.particles.empty()) throw ModelContractError("root belief holds no particles");
  const auto start = Clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  };
  PlanStats stats;
  const bool timed = config_.time_budget_ms > 0.0;
  while (timed ? elapsed_ms() < config_.time_budget_ms : stats.simulations < config_.simulations) {
    const State s = root.particles.sample(rng);
    simulate(root, s, 0, model, rng);
    ++stats.simulations;
  }
  if (root.edges.empty()) {
    ensure_child(root, root.particles.sample(rng), model, rng);
    root.value = logsumexp_value(root, config_.temperature);
  }
  stats.elapsed_ms = elapsed_ms();
  stats.tree_size = count_nodes(root);
  return stats;
}

std::string TreeAuditReport::summary() const {
  std::ostringstream os;
  os << "nodes=" << nodes << " value_violations=" << value_violations
     << " widening_violations=" << widening_violations << " visit_violations=" << visit_violations
     << " max_value_error=" << max_value_error;
  return os.str();
}

namespace {

void audit_node(const HistoryNode& node, const PlannerConfig& config, TreeAuditReport& report) {
  ++report.nodes;
  const double expected = logsumexp_value(node, config.temperature);
  const double err = std::abs(node.value - expected);
  report.max_value_error = std::max(report.max_value_error, err);
  if (err > 1e-12 * std::max(1.0, std::abs(expected))) ++report.value_violations;

  const double bound = config.widening_coefficient *
                           std::pow(static_cast<double>(node.visits), config.widening_exponent) + 1.0;
  if (static_cast<double>(node.child_count()) > bound) ++report.widening_violations;

  int edge_visits = 0;
  for (const auto& e : node.edges) edge_visits += e.visits;
  if (edge_visits != node.visits) ++report.visit_violations;

  for (const auto& e : node.edges) {
    for (const auto& [key, child] : e.children) audit_node(*child, config, report);
  }
}

}  // namespace

TreeAuditReport audit_tree(const HistoryNode& root, const PlannerConfig& config) {
  TreeAuditReport report;
  audit_node(root, config, report);
  return report;
}

UniformMacroSampler::UniformMacroSampler(std::vector<MacroAction> macros) : macros_(std::move(macros)) {}

UniformMacroSampler UniformMacroSampler::discrete_actions(int action_count) {
  std::vector<MacroAction> macros;
  for (int a = 0; a < action_count; ++a) macros.push_back(MacroAction{{Action::discrete(a)}});
  return UniformMacroSampler(std::move(macros));
}

std::optional<MacroAction> UniformMacroSampler::sample(const HistoryNode&, const State&,
                                                       const PomdpModel&, Rng& rng) const {
  if (macros_.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, macros_.size() - 1);
  return macros_[pick(rng)];
}

}  // namespace porpi
