#include "porpi/exact/schemes.hpp"

#include "porpi/core/softmax.hpp"

namespace porpi::exact {

namespace {

double exact_next_value(const CoverProjection& proj, int b, int a, const Eigen::VectorXd& lse) {
  double sum = 0.0;
  for (const auto& s : proj.successors(b, a)) sum += s.probability * lse(s.next);
  return sum;
}

double backup_entry(double psi, double lse_b, double reward, double next, double gamma) {
  return psi - lse_b + reward + gamma * next;
}

}  // namespace

PreferenceTable PreferenceTable::zeros(int beliefs, int actions) {
  PreferenceTable t;
  t.values = Eigen::MatrixXd::Zero(beliefs, actions);
  t.visits = Eigen::MatrixXi::Zero(beliefs, actions);
  return t;
}

PreferenceTable exact_dpp_backup(const PreferenceTable& table, const CoverProjection& proj, double eta) {
  if (!(eta > 0.0)) throw DomainError("eta must be positive");
  const Eigen::VectorXd lse = log_sum_exp_rows(table.values, eta);
  PreferenceTable out = table;
  for (int b = 0; b < proj.belief_count(); ++b)
    for (int a = 0; a < proj.action_count(); ++a)
      out.values(b, a) = backup_entry(table.values(b, a), lse(b), proj.reward(b, a),
                                      exact_next_value(proj, b, a, lse), proj.discount());
  out.visits.array() += 1;
  ++out.iteration;
  return out;
}

SampleSchedule SampleSchedule::exact_sums() {
  SampleSchedule s;
  s.exact = true;
  return s;
}

SampleSchedule SampleSchedule::linear(int scale) {
  SampleSchedule s;
  s.reward_samples = [scale](int k) { return scale * (k + 1); };
  s.observation_samples = [scale](int k) { return scale * (k + 1); };
  return s;
}

SampleMemory::SampleMemory(const CoverProjection& proj)
    : proj_(proj),
      reward_sums_(Eigen::MatrixXd::Zero(proj.belief_count(), proj.action_count())),
      reward_counts_(Eigen::MatrixXi::Zero(proj.belief_count(), proj.action_count())),
      observation_totals_(Eigen::MatrixXi::Zero(proj.belief_count(), proj.action_count())) {
  observation_counts_.resize(static_cast<std::size_t>(proj.belief_count() * proj.action_count()));
  for (int b = 0; b < proj.belief_count(); ++b)
    for (int a = 0; a < proj.action_count(); ++a)
      observation_counts_[static_cast<std::size_t>(b * proj.action_count() + a)].assign(
          proj.successors(b, a).size(), 0);
}

void SampleMemory::draw_rewards(int b, int a, int count, Rng& rng) {
  const Belief& belief = proj_.cover().beliefs[static_cast<std::size_t>(b)];
  const auto& R = proj_.model().rewards();
  for (int i = 0; i < count; ++i) reward_sums_(b, a) += R(sample_categorical(belief, rng), a);
  reward_counts_(b, a) += count;
}

void SampleMemory::draw_observations(int b, int a, int count, Rng& rng) {
  const auto& succ = proj_.successors(b, a);
  Eigen::VectorXd p(static_cast<Eigen::Index>(succ.size()));
  for (std::size_t j = 0; j < succ.size(); ++j) p(static_cast<Eigen::Index>(j)) = succ[j].probability;
  auto& counts = observation_counts_[static_cast<std::size_t>(b * proj_.action_count() + a)];
  for (int i = 0; i < count; ++i) ++counts[static_cast<std::size_t>(sample_categorical(p, rng))];
  observation_totals_(b, a) += count;
}

double SampleMemory::reward_mean(int b, int a) const {
  if (reward_counts_(b, a) == 0) throw NumericError("no reward samples drawn");
  return reward_sums_(b, a) / reward_counts_(b, a);
}

double SampleMemory::next_value_mean(int b, int a, const Eigen::VectorXd& lse) const {
  const int total = observation_totals_(b, a);
  if (total == 0) throw NumericError("no observation samples drawn");
  const auto& succ = proj_.successors(b, a);
  const auto& counts = observation_counts_[static_cast<std::size_t>(b * proj_.action_count() + a)];
  double sum = 0.0;
  for (std::size_t j = 0; j < succ.size(); ++j) sum += counts[j] * lse(succ[j].next);
  return sum / total;
}

PreferenceTable synchronous_update(const PreferenceTable& table, const CoverProjection& proj,
                                   double eta, const SampleSchedule& schedule, SampleMemory& memory,
                                   Rng& rng) {
  if (schedule.exact) return exact_dpp_backup(table, proj, eta);
  if (!(eta > 0.0)) throw DomainError("eta must be positive");
  const int n_k = schedule.reward_samples(table.iteration);
  const int m_k = schedule.observation_samples(table.iteration);
  const Eigen::VectorXd lse = log_sum_exp_rows(table.values, eta);
  PreferenceTable out = table;
  for (int b = 0; b < proj.belief_count(); ++b) {
    for (int a = 0; a < proj.action_count(); ++a) {
      if (memory.reward_count(b, a) < n_k) memory.draw_rewards(b, a, n_k - memory.reward_count(b, a), rng);
      if (memory.observation_count(b, a) < m_k)
        memory.draw_observations(b, a, m_k - memory.observation_count(b, a), rng);
      out.values(b, a) = backup_entry(table.values(b, a), lse(b), memory.reward_mean(b, a),
                                      memory.next_value_mean(b, a, lse), proj.discount());
    }
  }
  out.visits.array() += 1;
  ++out.iteration;
  return out;
}

PreferenceTable asynchronous_update(const PreferenceTable& table, const CoverProjection& proj,
                                    double eta, int b, int a, SampleMemory& memory, Rng& rng) {
  if (!(eta > 0.0)) throw DomainError("eta must be positive");
  if (b < 0 || b >= proj.belief_count() || a < 0 || a >= proj.action_count())
    throw DomainError("belief or action out of range");
  memory.draw_rewards(b, a, 1, rng);
  memory.draw_observations(b, a, 1, rng);
  const Eigen::VectorXd lse = log_sum_exp_rows(table.values, eta);
  PreferenceTable out = table;
  out.values(b, a) = backup_entry(table.values(b, a), lse(b), memory.reward_mean(b, a),
                                  memory.next_value_mean(b, a, lse), proj.discount());
  ++out.visits(b, a);
  ++out.iteration;
  return out;
}

Eigen::MatrixXd policy_from_prefs(const PreferenceTable& table, double eta) {
  return softmax_rows(table.values, eta);
}

ErrorLedger::ErrorLedger(int beliefs, int actions)
    : cumulative_(Eigen::MatrixXd::Zero(beliefs, actions)), sup_norms_{0.0} {}

void ErrorLedger::record(const PreferenceTable& previous, const PreferenceTable& current,
                         const CoverProjection& proj, double eta) {
  const PreferenceTable exact = exact_dpp_backup(previous, proj, eta);
  const Eigen::MatrixXd eps = current.values - exact.values;
  cumulative_ += eps;
  step_norms_.push_back(eps.cwiseAbs().maxCoeff());
  sup_norms_.push_back(cumulative_.cwiseAbs().maxCoeff());
}

}  // namespace porpi::exact
