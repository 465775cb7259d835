#pragma once

#include "porpi/core/model.hpp"
#include "porpi/core/particles.hpp"

namespace porpi {

struct BeliefUpdateOptions {
  int target_count = 200;
  /// Propagation attempts allowed per target particle before giving up.
  int retry_factor = 10;
};

/// Propagates particles of `b` through `m`, weights them by the likelihood of
/// `mo` and resamples `target_count` particles. Throws ParticleDepletion when
/// no propagated particle is consistent with `mo`.
BeliefParticleSet belief_update(const BeliefParticleSet& b, const MacroAction& m,
                                const MacroObservation& mo, const PomdpModel& model, Rng& rng,
                                const BeliefUpdateOptions& options = {});

struct FilteredBelief {
  BeliefParticleSet particles;
  bool depleted = false;
};

/// belief_update, falling back to particles propagated through `m` while
/// ignoring `mo` when the filter depletes.
FilteredBelief belief_update_with_fallback(const BeliefParticleSet& b, const MacroAction& m,
                                           const MacroObservation& mo, const PomdpModel& model,
                                           Rng& rng, const BeliefUpdateOptions& options = {});

}  // namespace porpi
