#include "porpi/core/macro.hpp"

#include "porpi/core/particles.hpp"

namespace porpi {

MacroStep macro_step(const PomdpModel& model, const State& s, const MacroAction& m, Rng& rng) {
  if (m.empty()) throw ModelContractError("macro action must contain at least one primitive");
  const double gamma = model.discount();
  MacroStep out;
  out.final_state = s;
  out.rewards.reserve(m.primitives.size());
  double discount = 1.0;
  for (const auto& a : m.primitives) {
    StepSample step = generative_step(model, out.final_state, a, rng);
    out.discounted_reward += discount * step.reward;
    out.rewards.push_back(step.reward);
    out.observation.primitives.push_back(step.observation);
    out.final_state = std::move(step.next);
    ++out.steps_survived;
    discount *= gamma;
    if (out.final_state.terminal) break;
  }
  return out;
}

double expected_immediate_reward(const BeliefParticleSet& b, const Action& a,
                                 const PomdpModel& model, Rng& rng) {
  if (b.empty()) throw ModelContractError("expected reward of an empty belief");
  double sum = 0.0;
  for (const auto& s : b) sum += generative_step(model, s, a, rng).reward;
  return sum / static_cast<double>(b.size());
}

}  // namespace porpi
