#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "porpi/core/model.hpp"

namespace porpi::exact {

/// Finite-support belief over the states of a tabular model.
using Belief = Eigen::VectorXd;

/// Enumerable POMDP given by full tables. T(s'|a,s) is row s of
/// `transition_matrix(a)`, Z(o|s',a) is row s' of `observation_matrix(a)`.
class TabularPomdp final : public PomdpModel {
 public:
  TabularPomdp(std::string name, std::vector<Eigen::MatrixXd> transitions,
               std::vector<Eigen::MatrixXd> observations, Eigen::MatrixXd rewards,
               Belief initial, double discount, std::vector<bool> terminal = {});

  const std::string& name() const { return name_; }
  int state_count() const { return static_cast<int>(rewards_.rows()); }
  int action_count() const { return static_cast<int>(rewards_.cols()); }
  int observation_count() const { return static_cast<int>(observations_.front().cols()); }

  const Eigen::MatrixXd& transition_matrix(int a) const { return transitions_[static_cast<std::size_t>(a)]; }
  const Eigen::MatrixXd& observation_matrix(int a) const { return observations_[static_cast<std::size_t>(a)]; }
  const Eigen::MatrixXd& rewards() const { return rewards_; }
  const Belief& initial_belief() const { return initial_; }

  /// R(b, a) = sum_s R(s, a) b(s).
  double expected_reward(const Belief& b, int a) const;
  /// P(o | a, b) for every o.
  Eigen::VectorXd observation_probabilities(const Belief& b, int a) const;
  /// tau(b, a, o). Throws DomainError when P(o | a, b) = 0.
  Belief update(const Belief& b, int a, int o) const;

  double discount() const override { return discount_; }
  double reward_bound() const override { return reward_bound_; }
  State sample_initial(Rng& rng) const override;
  Transition transition(const State& s, const Action& a, Rng& rng) const override;
  Transition transition_noiseless(const State& s, const Action& a) const override;
  Observation observe(const State& next, const Action& a, Rng& rng) const override;
  double observation_log_likelihood(const State& next, const Action& a,
                                    const Observation& o) const override;
  Action sample_random_action(Rng& rng) const override;
  void validate(const State& s, const Action& a) const override;
  RewardBreakdown reward_breakdown(const State& s, const Action& a, const State& next) const override;

 private:
  std::string name_;
  std::vector<Eigen::MatrixXd> transitions_;
  std::vector<Eigen::MatrixXd> observations_;
  Eigen::MatrixXd rewards_;
  Belief initial_;
  double discount_;
  double reward_bound_;
  std::vector<bool> terminal_;
};

/// P(o | a, b). Throws UnsupportedOperation for models that are not tabular.
double observation_likelihood(const Belief& b, int a, int o, const PomdpModel& model);

/// R(b, a) summed over the finite support of b.
double expected_immediate_reward(const Belief& b, int a, const PomdpModel& model);

inline double l1_distance(const Belief& x, const Belief& y) { return (x - y).lpNorm<1>(); }

/// Index drawn from a discrete distribution given as a vector of weights.
int sample_categorical(const Eigen::Ref<const Eigen::VectorXd>& weights, Rng& rng);

}  // namespace porpi::exact
