#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "porpi/baselines/pomcp.hpp"
#include "porpi/bench/audit.hpp"
#include "porpi/bench/experiment.hpp"
#include "porpi/bench/stats.hpp"
#include "porpi/core/belief_update.hpp"
#include "porpi/core/softmax.hpp"
#include "porpi/env/discrete_suite.hpp"
#include "porpi/env/scenario_loader.hpp"
#include "porpi/exact/bounds.hpp"
#include "porpi/exact/convergence.hpp"
#include "porpi/exact/covering.hpp"
#include "porpi/exact/reachable.hpp"
#include "porpi/exact/schemes.hpp"
#include "porpi/planner/planner.hpp"
#include "porpi/prm/path_heuristic.hpp"
#include "porpi/prm/sampler.hpp"

using namespace porpi;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::filesystem::path source_path(const std::string& rel) { return std::filesystem::path(PORPI_SOURCE_DIR) / rel; }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(4);
  s << x;
  return s.str();
}

exact::ConvergenceOptions options(exact::Scheme scheme, double delta, double eta, int k_max, std::uint64_t seed) {
  exact::ConvergenceOptions o;
  o.scheme = scheme;
  o.delta = delta;
  o.eta = eta;
  o.k_max = k_max;
  o.seed = seed;
  return o;
}

Outcome ac1() {
  const auto t0 = Clock::now();
  std::ostringstream d;
  bool pass = true;
  for (const auto& model : {env::absorbing_toy(), env::tiger()}) {
    const auto r = exact::run_convergence(*model, options(exact::Scheme::Exact, 0.05, 0.01, 500, 1));
    int violations = 0;
    for (const auto& row : r.rows) violations += row.error > row.theorem1_with_projection + 1e-12;
    const double e5 = r.rows[5].error;
    const double e500 = r.rows[500].error;
    pass = pass && violations == 0 && e500 <= 0.1 * e5;
    d << model->name() << ": cover " << r.cover_size << ", bound violations " << violations << ", err(5) "
      << fmt(e5) << ", err(500) " << fmt(e500) << "; ";
  }
  const double secs = seconds_since(t0);
  d << "runtime " << fmt(secs) << " s";
  return {pass && secs <= 120.0, d.str()};
}

Outcome ac2() {
  exact::BoundParameters p;
  p.gamma = 0.5;
  p.actions = 2;
  p.eta = 1.0;
  p.vmax = 2.0;
  const double k1 = exact::theorem_constants(p).k1;
  const bool k1_ok = std::abs(k1 - 34.7726) <= 1e-4 &&
                     std::abs(k1 - 2 * 0.5 * (std::log(2.0) + 8.0) / 0.25) <= 1e-6;
  auto tiger = env::tiger();
  int below = 0;
  for (int seed = 0; seed < 100; ++seed) {
    const auto r = exact::run_convergence(
        *tiger, options(exact::Scheme::Synchronous, 0.05, 0.01, 20, static_cast<std::uint64_t>(seed) + 1));
    bool ok = true;
    for (const auto& row : r.rows) ok = ok && row.error <= row.theorem2;
    below += ok;
  }
  return {k1_ok && below >= 95, "K1 " + fmt(k1) + ", seeds within the high-probability bound " +
                                    std::to_string(below) + "/100"};
}

Outcome ac3() {
  auto tiger = env::tiger();
  exact::CoverProjection proj(
      *tiger, exact::build_internal_covering(
                  exact::enumerate_reachable_beliefs(*tiger, exact::recommended_horizon(*tiger)), 0.05));
  auto a = exact::PreferenceTable::zeros(proj.belief_count(), proj.action_count());
  auto b = a;
  exact::SampleMemory memory(proj);
  Rng rng(1);
  bool equal = true;
  for (int k = 0; k < 30; ++k) {
    a = exact::exact_dpp_backup(a, proj, 0.01);
    b = exact::synchronous_update(b, proj, 0.01, exact::SampleSchedule::exact_sums(), memory, rng);
    equal = equal && (a.values.array() == b.values.array()).all();
  }
  std::vector<double> sync, async;
  for (int seed = 1; seed <= 50; ++seed) {
    const auto s = static_cast<std::uint64_t>(seed);
    sync.push_back(
        exact::run_convergence(*tiger, options(exact::Scheme::Synchronous, 0.05, 0.01, 20, s)).rows.back().error);
    async.push_back(
        exact::run_convergence(*tiger, options(exact::Scheme::Asynchronous, 0.05, 0.01, 20, s)).rows.back().error);
  }
  const auto ss = bench::summarize(sync);
  const auto sa = bench::summarize(async);
  const double pooled = std::sqrt(0.5 * (ss.stddev * ss.stddev + sa.stddev * sa.stddev));
  const double gap = std::abs(ss.mean - sa.mean);
  return {equal && gap <= 2.0 * pooled, std::string("exact sums bit-equal ") + (equal ? "yes" : "no") +
                                            ", sync " + fmt(ss.mean) + " async " + fmt(sa.mean) + " gap " +
                                            fmt(gap) + " <= 2 SD " + fmt(2.0 * pooled)};
}

Outcome ac4() {
  auto tiger = env::tiger();
  Rng rng(4);
  BeliefParticleSet prior(20000);
  for (int i = 0; i < 10000; ++i) prior.push_back(tiger->sample_initial(rng));
  BeliefUpdateOptions opt;
  opt.target_count = 10000;
  const auto post = belief_update(prior, MacroAction{{Action::discrete(0)}},
                                  MacroObservation{{Observation::discrete(0)}}, *tiger, rng, opt);
  double left = 0.0;
  for (const auto& s : post) left += s.index == 0;
  left /= static_cast<double>(post.size());
  const double tv = std::abs(left - 0.85);
  return {post.size() == 10000 && tv <= 0.03, "posterior " + fmt(left) + ", TV " + fmt(tv)};
}

Outcome ac5() {
  double worst = 0.0;
  Rng rng(5);
  std::normal_distribution<double> n(0.0, 50.0);
  for (int trial = 0; trial < 1000; ++trial) {
    Eigen::VectorXd x(4);
    for (int i = 0; i < 4; ++i) x(i) = n(rng);
    const double eta = 0.1 + 0.01 * trial;
    const double l = log_sum_exp(x, eta);
    const double c = n(rng);
    worst = std::max(worst, std::abs(log_sum_exp((x.array() + c).matrix(), eta) - (l + c)));
    if (l < x.maxCoeff() - 1e-12 || l > x.maxCoeff() + std::log(4.0) / eta + 1e-12) worst = 1.0;
    Eigen::VectorXd one(1);
    one << x(0);
    worst = std::max(worst, std::abs(log_sum_exp(one, eta) - x(0)));
    Eigen::VectorXd pair = Eigen::VectorXd::Constant(2, x(1));
    worst = std::max(worst, std::abs(log_sum_exp(pair, 1.0) - (x(1) + std::log(2.0))));
  }
  return {worst <= 1e-12, "max deviation " + fmt(worst)};
}

Outcome ac6() {
  const auto t0 = Clock::now();
  auto spec = bench::load_experiment_spec(source_path("specs/mini_maze.json"));
  spec.output_dir.clear();
  spec.keep_traces = false;
  const auto r = bench::run_experiment(spec);
  const long top = spec.budgets.back();
  const auto porpi = r.returns("porpi", top);
  const auto vs_refpol = bench::welch_one_sided(porpi, r.returns("refpol", top));
  const auto vs_pomcp = bench::welch_one_sided(porpi, r.returns("pomcp", top));
  bool monotone = true;
  std::ostringstream d;
  d << "porpi success";
  for (std::size_t i = 0; i < spec.budgets.size(); ++i) {
    const double s = r.cell("porpi", spec.budgets[i]).success_rate;
    d << " " << fmt(s);
    if (i > 0) monotone = monotone && s >= r.cell("porpi", spec.budgets[i - 1]).success_rate;
  }
  const double secs = seconds_since(t0);
  d << "; at " << top << ": porpi " << fmt(r.cell("porpi", top).mean_return) << ", refpol "
    << fmt(r.cell("refpol", top).mean_return) << " (p " << fmt(vs_refpol.p_value) << "), pomcp "
    << fmt(r.cell("pomcp", top).mean_return) << " (p " << fmt(vs_pomcp.p_value) << "); runtime " << fmt(secs) << " s";
  const bool pass = vs_refpol.p_value < 0.05 && vs_pomcp.p_value < 0.05 && monotone && secs <= 900.0;
  return {pass, d.str()};
}

Outcome ac7() {
  std::ostringstream d;
  bool pass = true;
  for (const char* name : {"specs/maze3d_smoke.json", "specs/rescue_smoke.json"}) {
    auto spec = bench::load_experiment_spec(source_path(name));
    spec.output_dir.clear();
    const auto world = env::load_scenario(spec.scenario);
    const auto r = bench::run_experiment(spec);
    std::size_t failures = 0, nfz = 0, crashed = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < r.traces.size(); ++i) {
      const auto audit = bench::audit_trace(r.traces[i], world.model.get());
      failures += audit.failures.size();
      nfz += audit.nfz_steps;
      worst = std::max(worst, audit.max_return_error);
      crashed += r.rows[i].failed;
    }
    pass = pass && failures == 0 && crashed == 0 && !r.traces.empty() && worst <= 1e-9;
    d << std::filesystem::path(name).stem().string() << ": " << r.traces.size() << " traces, " << failures
      << " audit failures, " << crashed << " crashed, NFZ steps " << nfz << ", max error " << fmt(worst) << "; ";
  }
  return {pass, d.str()};
}

Outcome ac8() {
  std::ostringstream d;
  bool pass = true;
  {
    const auto maze = env::load_scenario(source_path("scenarios/maze3d.cfg"));
    prm::RoadmapConfig rc;
    rc.nodes = 400;
    auto roadmap = std::make_shared<const prm::Roadmap>(prm::Roadmap::build(*maze.domain, rc, 7));
    const prm::PrmActionSampler sampler(roadmap, maze.domain, 15);
    const prm::PathRolloutHeuristic heuristic(roadmap, maze.domain);
    PlannerConfig c;
    c.simulations = 10000;
    c.max_macro_length = 15;
    c.max_depth = 60;
    const PreferencePlanner planner(c, sampler, heuristic);
    HistoryNode root;
    Rng rng(8);
    for (int i = 0; i < 200; ++i) root.particles.push_back(maze.model->sample_initial(rng));
    const auto stats = planner.plan(root, *maze.model, rng);
    const auto audit = audit_tree(root, c);
    pass = pass && audit.ok() && stats.simulations == 10000;
    d << "maze3d: " << audit.summary() << "; ";
  }
  {
    auto tiger = env::tiger();
    const auto sampler = UniformMacroSampler::discrete_actions(3);
    const ZeroHeuristic heuristic;
    PlannerConfig c;
    c.simulations = 10000;
    c.temperature = 0.5;
    c.max_depth = 20;
    const PreferencePlanner planner(c, sampler, heuristic);
    HistoryNode root;
    Rng rng(9);
    for (int i = 0; i < 200; ++i) root.particles.push_back(tiger->sample_initial(rng));
    planner.plan(root, *tiger, rng);
    const auto audit = audit_tree(root, c);
    pass = pass && audit.ok();
    d << "tiger: " << audit.summary();
  }
  return {pass, d.str()};
}

Outcome ac9() {
  const auto maze = env::load_scenario(source_path("scenarios/maze3d.cfg"));
  const auto& model = dynamic_cast<const env::MazeModel&>(*maze.model);
  prm::RoadmapConfig rc;
  rc.nodes = 400;
  auto roadmap = std::make_shared<const prm::Roadmap>(prm::Roadmap::build(*maze.domain, rc, 7));
  const prm::PrmActionSampler sampler(roadmap, maze.domain, 15);
  Rng rng(10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const env::Box arena = model.scenario().arena;
  HistoryNode h;
  int produced = 0, collisions = 0;
  while (produced < 1000) {
    const Vec3 p = arena.lo + (arena.hi - arena.lo).cwiseProduct(Vec3(u(rng), u(rng), u(rng)));
    if (!model.is_free(p, 0.6)) continue;
    State s{p};
    if (model.transition_noiseless(s, Action::move(Vec3::Zero())).next.terminal) continue;
    const auto m = sampler.sample(h, s, model, rng);
    if (!m) continue;
    ++produced;
    for (const auto& a : m->primitives) {
      const Transition t = model.transition_noiseless(s, a);
      collisions += (t.next.position - (s.position + a.direction)).norm() > 1e-9 ||
                    t.reward == model.scenario().danger_reward;
      if (t.next.terminal) break;
      s = t.next;
    }
  }

  const auto mini = env::load_scenario(source_path("scenarios/mini_maze.cfg"));
  prm::RoadmapConfig small;
  small.nodes = 150;
  small.neighbors = 8;
  const prm::Roadmap graph = prm::Roadmap::build(*mini.domain, small, 7);
  const std::size_t n = graph.nodes().size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, prm::kUnreachable));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0.0;
    for (const auto& e : graph.adjacency()[i]) d[i][static_cast<std::size_t>(e.to)] = e.length;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  std::size_t mismatches = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const auto dt = graph.distances_to(static_cast<int>(t));
    for (std::size_t i = 0; i < n; ++i) {
      const bool both_inf = dt[i] == prm::kUnreachable && d[i][t] == prm::kUnreachable;
      if (!both_inf && std::abs(dt[i] - d[i][t]) > 1e-9 * std::max(1.0, d[i][t])) ++mismatches;
    }
  }
  return {collisions == 0 && mismatches == 0 && n <= 200,
          std::to_string(produced) + " macros, " + std::to_string(collisions) + " collisions; " +
              std::to_string(n) + "-node roadmap, " + std::to_string(mismatches) + " distance mismatches"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}};
  std::vector<std::string> only(argv + 1, argv + argc);
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << name << (o.pass ? " PASS " : " FAIL ") << o.detail << " [" << fmt(seconds_since(t0)) << " s]"
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
