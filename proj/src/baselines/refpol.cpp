#include "porpi/baselines/refpol.hpp"

#include "porpi/planner/tree.hpp"

namespace porpi::baselines {

MacroAction refpol_step(const BeliefParticleSet& b, const ActionSampler& sampler, const PomdpModel& model,
                        int max_macro_length, Rng& rng) {
  const State& s = b.sample(rng);
  const HistoryNode scratch(1);
  std::optional<MacroAction> m = sampler.sample(scratch, s, model, rng);
  if (!m || m->empty()) return random_short_macro(model, max_macro_length, rng);
  if (m->length() > max_macro_length) m->primitives.resize(static_cast<std::size_t>(max_macro_length));
  return *m;
}

RefPolAgent::RefPolAgent(const ActionSampler& sampler, int max_macro_length, int particle_target)
    : sampler_(sampler), max_macro_length_(max_macro_length), particle_target_(particle_target) {}

Decision RefPolAgent::decide(const PomdpModel& model, Rng& rng) {
  Decision d;
  d.macro = refpol_step(belief_, sampler_, model, max_macro_length_, rng);
  return d;
}

bool RefPolAgent::observe(const PomdpModel& model, const MacroAction& m, const MacroObservation& mo, Rng& rng) {
  BeliefUpdateOptions options;
  options.target_count = particle_target_;
  FilteredBelief f = belief_update_with_fallback(belief_, m, mo, model, rng, options);
  belief_ = std::move(f.particles);
  return f.depleted;
}

}  // namespace porpi::baselines
