#include "porpi/core/model.hpp"

#include <cmath>

namespace porpi {

namespace {

std::int64_t quantize(double x, double grid) {
  return static_cast<std::int64_t>(std::llround(x / grid));
}

}  // namespace

Transition PomdpModel::transition_noiseless(const State&, const Action&) const {
  throw UnsupportedOperation("model has no noiseless transition");
}

void PomdpModel::validate(const State&, const Action&) const {}

Key PomdpModel::observation_key(const Observation& o) const {
  switch (o.kind) {
    case Observation::Kind::Null:
      return {0};
    case Observation::Kind::Discrete:
      return {1, o.index};
    case Observation::Kind::Position: {
      const double g = observation_grid();
      return {2, quantize(o.value.x(), g), quantize(o.value.y(), g), quantize(o.value.z(), g)};
    }
  }
  return {0};
}

Key PomdpModel::macro_observation_key(const MacroObservation& mo) const {
  Key key;
  key.push_back(mo.length());
  for (const auto& o : mo.primitives) {
    const Key k = observation_key(o);
    key.push_back(static_cast<std::int64_t>(k.size()));
    key.insert(key.end(), k.begin(), k.end());
  }
  return key;
}

Key PomdpModel::action_key(const Action& a) const {
  if (a.is_discrete()) return {a.index};
  const double g = action_grid();
  return {-1, quantize(a.direction.x(), g), quantize(a.direction.y(), g), quantize(a.direction.z(), g)};
}

Key PomdpModel::macro_action_key(const MacroAction& m) const {
  Key key;
  for (const auto& a : m.primitives) {
    const Key k = action_key(a);
    key.insert(key.end(), k.begin(), k.end());
  }
  return key;
}

RewardBreakdown PomdpModel::reward_breakdown(const State&, const Action&, const State&) const {
  return {};
}

std::shared_ptr<const PomdpModel> PomdpModel::at_step(int) const { return shared_from_this(); }

StepSample generative_step(const PomdpModel& model, const State& s, const Action& a, Rng& rng) {
  if (s.terminal) return {s, Observation::null(), 0.0};
  model.validate(s, a);
  Transition t = model.transition(s, a, rng);
  Observation o = model.observe(t.next, a, rng);
  return {std::move(t.next), o, t.reward};
}

}  // namespace porpi
