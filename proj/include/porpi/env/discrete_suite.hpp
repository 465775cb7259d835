#pragma once

#include <memory>
#include <string>
#include <vector>

#include "porpi/exact/tabular_pomdp.hpp"

namespace porpi::env {

/// Classic Tiger: listen -1 (accuracy 0.85), correct door +10, wrong door
/// -100; opening a door resets the tiger uniformly.
std::shared_ptr<exact::TabularPomdp> tiger(double accuracy = 0.85, double discount = 0.95);

/// One state, two actions with rewards (r1, r2), one observation.
std::shared_ptr<exact::TabularPomdp> absorbing_toy(double r1 = 1.0, double r2 = 0.0, double discount = 0.5);

/// Deterministic, fully observed chain advancing one state per step with the
/// last state absorbing. `actions` copies of the advance action with the
/// same reward vector.
std::shared_ptr<exact::TabularPomdp> deterministic_chain(int states, const Eigen::VectorXd& rewards,
                                                         int actions = 1, double discount = 0.9);

/// Hand-built three-state, two-action, two-observation problem.
std::shared_ptr<exact::TabularPomdp> three_state(double discount = 0.9);

/// "tiger", "absorbing", "chain", "three-state".
std::shared_ptr<exact::TabularPomdp> make_discrete_model(const std::string& id);
std::vector<std::string> discrete_model_ids();

}  // namespace porpi::env
