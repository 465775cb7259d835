#pragma once

#include <map>
#include <memory>
#include <string>

#include "porpi/core/errors.hpp"
#include "porpi/core/types.hpp"

namespace porpi {

struct Transition {
  State next;
  double reward = 0.0;
};

struct StepSample {
  State next;
  Observation observation;
  double reward = 0.0;
};

using RewardBreakdown = std::map<std::string, double>;

/// Generative POMDP. Implementations must be immutable after construction so
/// one instance can be shared by concurrent episodes.
class PomdpModel : public std::enable_shared_from_this<PomdpModel> {
 public:
  virtual ~PomdpModel() = default;

  virtual double discount() const = 0;
  /// Rmax: every reward the model emits satisfies |r| <= reward_bound().
  virtual double reward_bound() const = 0;
  double value_bound() const { return reward_bound() / (1.0 - discount()); }

  virtual State sample_initial(Rng& rng) const = 0;
  virtual Transition transition(const State& s, const Action& a, Rng& rng) const = 0;
  /// Transition with every noise term at its mean.
  virtual Transition transition_noiseless(const State& s, const Action& a) const;
  virtual Observation observe(const State& next, const Action& a, Rng& rng) const = 0;
  /// log Z(o | next, a); -infinity for impossible observations.
  virtual double observation_log_likelihood(const State& next, const Action& a,
                                            const Observation& o) const = 0;

  virtual Action sample_random_action(Rng& rng) const = 0;
  virtual void validate(const State& s, const Action& a) const;

  virtual Key observation_key(const Observation& o) const;
  virtual Key macro_observation_key(const MacroObservation& mo) const;
  virtual Key action_key(const Action& a) const;
  Key macro_action_key(const MacroAction& m) const;

  virtual bool is_success(const State&) const { return false; }
  /// Named reward components of a transition, for trace logging and audit.
  virtual RewardBreakdown reward_breakdown(const State& s, const Action& a,
                                           const State& next) const;

  /// The model as it looks at global step `step`. Models whose rewards change
  /// on a schedule return a frozen view; everything else returns itself.
  virtual std::shared_ptr<const PomdpModel> at_step(int step) const;

 protected:
  virtual double observation_grid() const { return 1.0; }
  virtual double action_grid() const { return 1e-2; }
};

StepSample generative_step(const PomdpModel& model, const State& s, const Action& a, Rng& rng);

}  // namespace porpi
