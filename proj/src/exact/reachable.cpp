#include "porpi/exact/reachable.hpp"

#include <cmath>
#include <numeric>

namespace porpi::exact {

std::vector<Belief> enumerate_reachable_beliefs(const TabularPomdp& model, int horizon,
                                                const ReachOptions& options) {
  if (horizon < 0) throw DomainError("horizon must be non-negative");
  std::vector<int> actions = options.actions;
  if (actions.empty()) {
    actions.resize(static_cast<std::size_t>(model.action_count()));
    std::iota(actions.begin(), actions.end(), 0);
  }
  for (int a : actions)
    if (a < 0 || a >= model.action_count()) throw DomainError("action out of range");

  std::vector<Belief> found{model.initial_belief()};
  std::vector<std::size_t> frontier{0};
  std::size_t generated = 0;
  auto known = [&](const Belief& b) {
    for (const auto& x : found)
      if (l1_distance(x, b) <= options.dedup_tolerance) return true;
    return false;
  };
  for (int depth = 0; depth < horizon && !frontier.empty(); ++depth) {
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier) {
      const Belief b = found[idx];
      for (int a : actions) {
        const Eigen::VectorXd p = model.observation_probabilities(b, a);
        for (int o = 0; o < model.observation_count(); ++o) {
          if (!(p(o) > 0.0)) continue;
          if (++generated > options.node_budget) throw BudgetExceeded("reachable belief enumeration exceeded node budget");
          Belief child = model.update(b, a, o);
          if (known(child)) continue;
          found.push_back(std::move(child));
          next.push_back(found.size() - 1);
        }
      }
    }
    frontier = std::move(next);
  }
  return found;
}

int recommended_horizon(const TabularPomdp& model) {
  int h = 0;
  double g = 1.0;
  while (g >= 0.01) {
    g *= model.discount();
    ++h;
  }
  return h;
}

}  // namespace porpi::exact
