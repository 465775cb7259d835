#include "porpi/exact/tabular_pomdp.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace porpi::exact {

namespace {

void check_stochastic(const Eigen::MatrixXd& m, const std::string& what) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if ((m.row(r).array() < 0.0).any() || std::abs(m.row(r).sum() - 1.0) > 1e-9) {
      std::ostringstream msg;
      msg << what << " row " << r << " is not a distribution";
      throw DomainError(msg.str());
    }
  }
}

}  // namespace

TabularPomdp::TabularPomdp(std::string name, std::vector<Eigen::MatrixXd> transitions,
                           std::vector<Eigen::MatrixXd> observations, Eigen::MatrixXd rewards,
                           Belief initial, double discount, std::vector<bool> terminal)
    : name_(std::move(name)),
      transitions_(std::move(transitions)),
      observations_(std::move(observations)),
      rewards_(std::move(rewards)),
      initial_(std::move(initial)),
      discount_(discount),
      terminal_(std::move(terminal)) {
  const auto S = rewards_.rows();
  const auto A = rewards_.cols();
  if (S == 0 || A == 0) throw DomainError("empty reward table");
  if (static_cast<Eigen::Index>(transitions_.size()) != A ||
      static_cast<Eigen::Index>(observations_.size()) != A)
    throw DomainError("one transition and observation table per action required");
  if (!(discount_ > 0.0 && discount_ < 1.0)) throw DomainError("discount must lie in (0, 1)");
  for (Eigen::Index a = 0; a < A; ++a) {
    const auto& T = transitions_[static_cast<std::size_t>(a)];
    const auto& Z = observations_[static_cast<std::size_t>(a)];
    if (T.rows() != S || T.cols() != S) throw DomainError("transition table has wrong shape");
    if (Z.rows() != S || Z.cols() != observations_.front().cols() || Z.cols() == 0)
      throw DomainError("observation table has wrong shape");
    check_stochastic(T, "transition");
    check_stochastic(Z, "observation");
  }
  if (initial_.size() != S) throw DomainError("initial belief has wrong size");
  check_stochastic(initial_.transpose(), "initial belief");
  if (terminal_.empty()) terminal_.assign(static_cast<std::size_t>(S), false);
  if (static_cast<Eigen::Index>(terminal_.size()) != S) throw DomainError("terminal mask has wrong size");
  reward_bound_ = rewards_.cwiseAbs().maxCoeff();
}

double TabularPomdp::expected_reward(const Belief& b, int a) const {
  return rewards_.col(a).dot(b);
}

Eigen::VectorXd TabularPomdp::observation_probabilities(const Belief& b, int a) const {
  const Eigen::RowVectorXd next = b.transpose() * transition_matrix(a);
  return (next * observation_matrix(a)).transpose();
}

Belief TabularPomdp::update(const Belief& b, int a, int o) const {
  const Eigen::RowVectorXd next = b.transpose() * transition_matrix(a);
  Belief out = next.transpose().cwiseProduct(observation_matrix(a).col(o));
  const double z = out.sum();
  if (!(z > 0.0)) throw DomainError("observation has zero probability under the belief");
  return out / z;
}

State TabularPomdp::sample_initial(Rng& rng) const {
  State s;
  s.index = sample_categorical(initial_, rng);
  s.terminal = terminal_[static_cast<std::size_t>(s.index)];
  return s;
}

void TabularPomdp::validate(const State& s, const Action& a) const {
  if (s.index < 0 || s.index >= state_count()) throw ModelContractError("state index out of range");
  if (!a.is_discrete() || a.index >= action_count()) throw ModelContractError("action index out of range");
}

Transition TabularPomdp::transition(const State& s, const Action& a, Rng& rng) const {
  validate(s, a);
  State next;
  next.index = sample_categorical(transition_matrix(a.index).row(s.index).transpose(), rng);
  next.terminal = terminal_[static_cast<std::size_t>(next.index)];
  return {next, rewards_(s.index, a.index)};
}

Transition TabularPomdp::transition_noiseless(const State& s, const Action& a) const {
  validate(s, a);
  State next;
  transition_matrix(a.index).row(s.index).maxCoeff(&next.index);
  next.terminal = terminal_[static_cast<std::size_t>(next.index)];
  return {next, rewards_(s.index, a.index)};
}

RewardBreakdown TabularPomdp::reward_breakdown(const State& s, const Action& a, const State&) const {
  if (s.terminal) return {};
  return {{"reward", rewards_(s.index, a.index)}};
}

Observation TabularPomdp::observe(const State& next, const Action& a, Rng& rng) const {
  validate(next, a);
  return Observation::discrete(sample_categorical(observation_matrix(a.index).row(next.index).transpose(), rng));
}

double TabularPomdp::observation_log_likelihood(const State& next, const Action& a,
                                                const Observation& o) const {
  validate(next, a);
  if (o.kind != Observation::Kind::Discrete || o.index < 0 || o.index >= observation_count())
    return -std::numeric_limits<double>::infinity();
  return std::log(observation_matrix(a.index)(next.index, o.index));
}

Action TabularPomdp::sample_random_action(Rng& rng) const {
  std::uniform_int_distribution<int> pick(0, action_count() - 1);
  return Action::discrete(pick(rng));
}

double observation_likelihood(const Belief& b, int a, int o, const PomdpModel& model) {
  const auto* tab = dynamic_cast<const TabularPomdp*>(&model);
  if (tab == nullptr) throw UnsupportedOperation("observation likelihood needs a tabular model");
  if (o < 0 || o >= tab->observation_count()) throw ModelContractError("observation index out of range");
  return tab->observation_probabilities(b, a)(o);
}

double expected_immediate_reward(const Belief& b, int a, const PomdpModel& model) {
  const auto* tab = dynamic_cast<const TabularPomdp*>(&model);
  if (tab == nullptr) throw UnsupportedOperation("expected reward over a belief vector needs a tabular model");
  return tab->expected_reward(b, a);
}

int sample_categorical(const Eigen::Ref<const Eigen::VectorXd>& weights, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, weights.sum());
  double x = u(rng);
  int last = 0;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (weights(i) <= 0.0) continue;
    last = static_cast<int>(i);
    if (x < weights(i)) return last;
    x -= weights(i);
  }
  return last;
}

}  // namespace porpi::exact
