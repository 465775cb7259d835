#include "porpi/core/belief_update.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace porpi {

namespace {

struct Weighted {
  State state;
  double log_weight;
};

// Propagates one particle through the macro, accumulating the log-likelihood of
// the recorded observations. -inf when the particle cannot have produced them.
Weighted propagate(const State& start, const MacroAction& m, const MacroObservation& mo,
                   const PomdpModel& model, Rng& rng) {
  constexpr double kImpossible = -std::numeric_limits<double>::infinity();
  Weighted w{start, 0.0};
  const int steps = mo.length();
  for (int t = 0; t < steps; ++t) {
    if (w.state.terminal) return {w.state, kImpossible};
    const Action& a = m.primitives[static_cast<std::size_t>(t)];
    model.validate(w.state, a);
    w.state = model.transition(w.state, a, rng).next;
    w.log_weight += model.observation_log_likelihood(w.state, a, mo.primitives[static_cast<std::size_t>(t)]);
    if (w.log_weight == kImpossible) return w;
  }
  return w;
}

// Systematic resampling of `count` states proportional to exp(log_weight).
BeliefParticleSet resample(const std::vector<Weighted>& pool, int count, std::size_t capacity,
                           Rng& rng) {
  double max_lw = -std::numeric_limits<double>::infinity();
  for (const auto& w : pool) max_lw = std::max(max_lw, w.log_weight);
  std::vector<double> cumulative;
  cumulative.reserve(pool.size());
  double total = 0.0;
  for (const auto& w : pool) {
    total += std::exp(w.log_weight - max_lw);
    cumulative.push_back(total);
  }
  BeliefParticleSet out(std::max<std::size_t>(capacity, static_cast<std::size_t>(count)));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double step = total / count;
  double pointer = u(rng) * step;
  std::size_t i = 0;
  for (int n = 0; n < count; ++n) {
    while (i + 1 < cumulative.size() && cumulative[i] < pointer) ++i;
    out.push_back(pool[i].state);
    pointer += step;
  }
  return out;
}

}  // namespace

BeliefParticleSet belief_update(const BeliefParticleSet& b, const MacroAction& m,
                                const MacroObservation& mo, const PomdpModel& model, Rng& rng,
                                const BeliefUpdateOptions& options) {
  if (b.empty()) throw ModelContractError("belief update of an empty particle set");
  if (mo.length() > m.length()) throw ModelContractError("macro observation longer than macro action");
  const int target = std::max(1, options.target_count);
  const long budget = static_cast<long>(options.retry_factor) * target;

  std::vector<Weighted> kept;
  kept.reserve(static_cast<std::size_t>(target));
  for (long attempt = 0; attempt < budget && static_cast<int>(kept.size()) < target; ++attempt) {
    Weighted w = propagate(b.sample(rng), m, mo, model, rng);
    if (std::isfinite(w.log_weight)) kept.push_back(std::move(w));
  }
  if (kept.empty()) throw ParticleDepletion("no particle consistent with the macro observation");
  BeliefParticleSet out = resample(kept, target, b.capacity(), rng);
  out.set_seed_tag(b.seed_tag());
  return out;
}

FilteredBelief belief_update_with_fallback(const BeliefParticleSet& b, const MacroAction& m,
                                           const MacroObservation& mo, const PomdpModel& model,
                                           Rng& rng, const BeliefUpdateOptions& options) {
  try {
    return {belief_update(b, m, mo, model, rng, options), false};
  } catch (const ParticleDepletion&) {
  }
  // Transition prior: propagate through the realised prefix of the macro only.
  const int target = std::max(1, options.target_count);
  BeliefParticleSet out(std::max<std::size_t>(b.capacity(), static_cast<std::size_t>(target)),
                        b.seed_tag());
  for (int n = 0; n < target; ++n) {
    State s = b.sample(rng);
    for (int t = 0; t < mo.length() && !s.terminal; ++t) {
      s = model.transition(s, m.primitives[static_cast<std::size_t>(t)], rng).next;
    }
    out.push_back(s);
  }
  return {std::move(out), true};
}

}  // namespace porpi
