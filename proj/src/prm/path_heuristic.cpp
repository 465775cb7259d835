#include "porpi/prm/path_heuristic.hpp"

#include <algorithm>

#include "porpi/prm/sampler.hpp"

namespace porpi::prm {

PathRolloutHeuristic::PathRolloutHeuristic(std::shared_ptr<const Roadmap> roadmap,
                                           std::shared_ptr<const env::NavigationDomain> domain, int max_steps)
    : roadmap_(std::move(roadmap)), domain_(std::move(domain)), max_steps_(max_steps) {}

double PathRolloutHeuristic::value(const HistoryNode&, const State& s, const PomdpModel& model) const {
  if (s.terminal) return 0.0;
  const auto* view = dynamic_cast<const env::NavigationDomain*>(&model);
  const env::NavigationDomain& nav = view != nullptr ? *view : *domain_;
  const double gamma = model.discount();
  double total = 0.0;
  double discount = 1.0;
  int steps = 0;
  State state = s;
  while (steps < max_steps_ && !state.terminal) {
    std::vector<Vec3> best;
    double best_len = kUnreachable;
    for (int t : nav.heuristic_targets(state)) {
      auto path = roadmap_->path_to_target(state.position, t, nav);
      if (path.empty()) continue;
      double len = 0.0;
      for (std::size_t i = 1; i < path.size(); ++i) len += (path[i] - path[i - 1]).norm();
      if (len < best_len) {
        best_len = len;
        best = std::move(path);
      }
    }
    if (best.empty()) break;
    const MacroAction m = polyline_to_macro(best, nav.speed(), max_steps_ - steps);
    if (m.empty()) break;
    const std::uint32_t visited = state.visited;
    for (const auto& a : m.primitives) {
      const Transition tr = model.transition_noiseless(state, a);
      total += discount * tr.reward;
      discount *= gamma;
      state = tr.next;
      ++steps;
      if (state.terminal) break;
    }
    if (state.visited == visited && !state.terminal) break;
  }
  const double vmax = model.value_bound();
  return std::clamp(total, -vmax, vmax);
}

}  // namespace porpi::prm
