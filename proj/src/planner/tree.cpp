#include "porpi/planner/tree.hpp"

#include <cmath>

#include "porpi/core/errors.hpp"
#include "porpi/core/softmax.hpp"

namespace porpi {

HistoryNode* ActionEdge::child(const Key& observation_key) const {
  auto it = children.find(observation_key);
  return it == children.end() ? nullptr : it->second.get();
}

HistoryNode& ActionEdge::child_or_create(const Key& observation_key, std::size_t particle_capacity) {
  auto& slot = children[observation_key];
  if (!slot) slot = std::make_unique<HistoryNode>(particle_capacity);
  return *slot;
}

int HistoryNode::find_edge(const Key& key) const {
  for (const auto& e : edges) {
    if (e.key == key) return e.id;
  }
  return -1;
}

int HistoryNode::add_edge(MacroAction macro, Key key) {
  ActionEdge e;
  e.id = static_cast<int>(edges.size());
  e.macro = std::move(macro);
  e.key = std::move(key);
  edges.push_back(std::move(e));
  return edges.back().id;
}

Eigen::VectorXd HistoryNode::preferences() const {
  Eigen::VectorXd p(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) p(static_cast<Eigen::Index>(i)) = edges[i].preference;
  return p;
}

double logsumexp_value(const HistoryNode& node, double eta) {
  if (node.edges.empty()) return 0.0;
  return log_sum_exp(node.preferences(), eta);
}

int sample_pref_softmax(const HistoryNode& node, double eta, Rng& rng) {
  if (node.edges.empty()) throw ModelContractError("softmax sampling at a node without children");
  if (node.edges.size() == 1) return 0;
  double max_pref = node.edges.front().preference;
  for (const auto& e : node.edges) max_pref = std::max(max_pref, e.preference);
  double total = 0.0;
  thread_local std::vector<double> cumulative;
  cumulative.clear();
  for (const auto& e : node.edges) {
    total += std::exp(eta * (e.preference - max_pref));
    cumulative.push_back(total);
  }
  const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
  for (std::size_t i = 0; i < cumulative.size(); ++i) {
    if (u < cumulative[i]) return static_cast<int>(i);
  }
  return static_cast<int>(cumulative.size() - 1);
}

int best_edge(const HistoryNode& node) {
  if (node.edges.empty()) throw ModelContractError("no children to choose from");
  bool any_visited = false;
  for (const auto& e : node.edges) any_visited = any_visited || e.visits > 0;
  int best = -1;
  for (const auto& e : node.edges) {
    if (any_visited && e.visits == 0) continue;
    if (best < 0 || e.preference > node.edges[static_cast<std::size_t>(best)].preference) best = e.id;
  }
  return best;
}

std::size_t count_nodes(const HistoryNode& root) {
  std::size_t n = 1;
  for (const auto& e : root.edges) {
    for (const auto& [key, child] : e.children) n += count_nodes(*child);
  }
  return n;
}

}  // namespace porpi
