#pragma once

#include <vector>

#include "porpi/exact/tabular_pomdp.hpp"

namespace porpi::exact {

struct ReachOptions {
  /// Restrict expansion to these actions; empty means all.
  std::vector<int> actions;
  double dedup_tolerance = 1e-10;
  /// Maximum number of generated successor beliefs before giving up.
  std::size_t node_budget = 1'000'000;
};

/// Breadth-first enumeration of tau(b, a, o) images from b0 up to `horizon`
/// steps, deduplicated in d1. Order is BFS discovery order.
std::vector<Belief> enumerate_reachable_beliefs(const TabularPomdp& model, int horizon,
                                                const ReachOptions& options = {});

/// Smallest H with gamma^H < 0.01.
int recommended_horizon(const TabularPomdp& model);

}  // namespace porpi::exact
