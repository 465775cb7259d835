#pragma once

#include <vector>

#include "porpi/core/model.hpp"

namespace porpi {

struct MacroStep {
  State final_state;
  MacroObservation observation;
  double discounted_reward = 0.0;
  int steps_survived = 0;
  std::vector<double> rewards;
};

/// Runs `m` open-loop. Stops early when a terminal state is entered, so
/// `steps_survived` < |m| only on terminal entry.
MacroStep macro_step(const PomdpModel& model, const State& s, const MacroAction& m, Rng& rng);

/// Monte-Carlo mean of the immediate reward over the particles.
class BeliefParticleSet;
double expected_immediate_reward(const BeliefParticleSet& b, const Action& a,
                                 const PomdpModel& model, Rng& rng);

}  // namespace porpi
