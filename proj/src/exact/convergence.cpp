#include "porpi/exact/convergence.hpp"

#include <chrono>
#include <ostream>

#include "porpi/exact/bounds.hpp"
#include "porpi/exact/evaluation.hpp"
#include "porpi/exact/oracle.hpp"
#include "porpi/exact/reachable.hpp"
#include "porpi/exact/schemes.hpp"

namespace porpi::exact {

Scheme parse_scheme(const std::string& name) {
  if (name == "exact") return Scheme::Exact;
  if (name == "sync" || name == "synchronous") return Scheme::Synchronous;
  if (name == "async" || name == "asynchronous") return Scheme::Asynchronous;
  throw DomainError("unknown scheme '" + name + "'");
}

ConvergenceResult run_convergence(const TabularPomdp& model, const ConvergenceOptions& options) {
  if (options.k_max < 0) throw DomainError("k_max must be non-negative");
  const int horizon = options.horizon >= 0 ? options.horizon : recommended_horizon(model);
  const std::vector<Belief> reachable = enumerate_reachable_beliefs(model, horizon);
  CoverProjection proj(model, build_internal_covering(reachable, options.delta));
  const int resolution =
      options.grid_resolution > 0 ? options.grid_resolution : default_grid_resolution(model.state_count());
  const Eigen::MatrixXd qstar = oracle_qstar(model, resolution, proj.cover().beliefs);

  BoundParameters params;
  params.gamma = model.discount();
  params.eta = options.eta;
  params.actions = model.action_count();
  params.vmax = model.value_bound();
  params.delta = options.delta;
  params.covering_number = proj.cover().size();
  params.alpha = options.alpha;

  ConvergenceResult result;
  result.cover_size = proj.cover().size();
  result.reachable = reachable.size();

  const int n = proj.belief_count();
  const int A = proj.action_count();
  PreferenceTable table = PreferenceTable::zeros(n, A);
  ErrorLedger ledger(n, A);
  SampleMemory memory(proj);
  const SampleSchedule schedule = SampleSchedule::linear(options.sample_scale);
  Rng rng(options.seed);
  const auto start = std::chrono::steady_clock::now();

  for (int k = 0;; ++k) {
    const Eigen::MatrixXd q = evaluate_policy_on_cover(policy_from_prefs(table, options.eta), proj, params.gamma);
    ConvergenceRow row;
    row.k = k;
    row.error = (qstar - q).cwiseAbs().maxCoeff();
    row.theorem1 = theorem1_bound(k, params, ledger.cumulative_sup_norms());
    row.theorem1_with_projection = row.theorem1 + projection_term(params);
    row.theorem2 = theorem2_bound(k, params);
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    result.rows.push_back(row);
    if (k == options.k_max) break;

    const PreferenceTable previous = table;
    switch (options.scheme) {
      case Scheme::Exact:
        table = exact_dpp_backup(table, proj, options.eta);
        break;
      case Scheme::Synchronous:
        table = synchronous_update(table, proj, options.eta, schedule, memory, rng);
        break;
      case Scheme::Asynchronous:
        for (int b = 0; b < n; ++b)
          for (int a = 0; a < A; ++a) table = asynchronous_update(table, proj, options.eta, b, a, memory, rng);
        break;
    }
    if (options.scheme != Scheme::Exact) ledger.record(previous, table, proj, options.eta);
  }
  return result;
}

void write_convergence_csv(std::ostream& out, const ConvergenceResult& result) {
  out << "k,error,thm1_bound,thm1_plus_projection,thm2_bound,wall_ms\n";
  out.precision(17);
  for (const auto& r : result.rows)
    out << r.k << ',' << r.error << ',' << r.theorem1 << ',' << r.theorem1_with_projection << ','
        << r.theorem2 << ',' << r.wall_ms << '\n';
}

}  // namespace porpi::exact
