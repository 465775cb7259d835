#pragma once

#include <functional>
#include <vector>

#include "porpi/exact/projection.hpp"

namespace porpi::exact {

/// Psi_k over cover x actions with per-pair visit counters.
struct PreferenceTable {
  Eigen::MatrixXd values;
  int iteration = 0;
  Eigen::MatrixXi visits;

  static PreferenceTable zeros(int beliefs, int actions);
};

/// Exact preference backup
///   Psi'(b,a) = Psi(b,a) - L Psi(b) + R(b,a) + gamma sum_o P(o|a,b) L Psi(phi(b,a,o)).
PreferenceTable exact_dpp_backup(const PreferenceTable& table, const CoverProjection& proj, double eta);

/// Sample counts N_k, M_k per iteration, or exact expectations.
struct SampleSchedule {
  bool exact = false;
  std::function<int(int)> reward_samples;
  std::function<int(int)> observation_samples;

  static SampleSchedule exact_sums();
  /// N_k = M_k = scale * (k + 1).
  static SampleSchedule linear(int scale = 1);
};

/// Cumulative samples drawn so far for every (b, a): a running reward sum and
/// counts over the successor list of the pair.
class SampleMemory {
 public:
  explicit SampleMemory(const CoverProjection& proj);

  void draw_rewards(int b, int a, int count, Rng& rng);
  void draw_observations(int b, int a, int count, Rng& rng);
  int reward_count(int b, int a) const { return reward_counts_(b, a); }
  int observation_count(int b, int a) const { return observation_totals_(b, a); }
  double reward_mean(int b, int a) const;
  /// sum_j L Psi(phi(b, a, o_j)) / M over the stored observation samples.
  double next_value_mean(int b, int a, const Eigen::VectorXd& lse) const;

 private:
  const CoverProjection& proj_;
  Eigen::MatrixXd reward_sums_;
  Eigen::MatrixXi reward_counts_;
  Eigen::MatrixXi observation_totals_;
  std::vector<std::vector<int>> observation_counts_;
};

/// One synchronous sweep: every (b, a) tops its samples up to N_k / M_k and is
/// updated from the previous table.
PreferenceTable synchronous_update(const PreferenceTable& table, const CoverProjection& proj,
                                   double eta, const SampleSchedule& schedule, SampleMemory& memory,
                                   Rng& rng);

/// Updates only (b, a) after adding one reward and one observation sample to
/// its cumulative store.
PreferenceTable asynchronous_update(const PreferenceTable& table, const CoverProjection& proj,
                                    double eta, int b, int a, SampleMemory& memory, Rng& rng);

/// Softmax rows of the table.
Eigen::MatrixXd policy_from_prefs(const PreferenceTable& table, double eta);

/// Tracks eps_k = Psi_k - O Psi_{k-1} and E_k = sum_{j<=k} eps_j.
class ErrorLedger {
 public:
  ErrorLedger(int beliefs, int actions);

  /// Records eps for the step previous -> current.
  void record(const PreferenceTable& previous, const PreferenceTable& current,
              const CoverProjection& proj, double eta);
  /// ||E_j||_inf for j = 0..k.
  const std::vector<double>& cumulative_sup_norms() const { return sup_norms_; }
  const std::vector<double>& step_sup_norms() const { return step_norms_; }

 private:
  Eigen::MatrixXd cumulative_;
  std::vector<double> sup_norms_;
  std::vector<double> step_norms_;
};

}  // namespace porpi::exact
