#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "porpi/baselines/pomcp.hpp"
#include "porpi/baselines/refpol.hpp"
#include "porpi/baselines/refsolver.hpp"
#include "porpi/env/discrete_suite.hpp"
#include "porpi/planner/episode.hpp"

using namespace porpi;
using namespace porpi::baselines;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// Two Bernoulli arms: state index w0 + 2 w1 holds both payouts, redrawn each step.
std::shared_ptr<exact::TabularPomdp> bandit(double p0, double p1) {
  VectorXd prior(4);
  prior << (1 - p0) * (1 - p1), p0 * (1 - p1), (1 - p0) * p1, p0 * p1;
  const MatrixXd redraw = prior.transpose().replicate(4, 1);
  MatrixXd rewards(4, 2);
  rewards << 0, 0, 1, 0, 0, 1, 1, 1;
  return std::make_shared<exact::TabularPomdp>("bandit", std::vector<MatrixXd>{redraw, redraw},
                                               std::vector<MatrixXd>{MatrixXd::Ones(4, 1), MatrixXd::Ones(4, 1)},
                                               rewards, prior, 0.5);
}

std::vector<MacroAction> discrete_macros(int n) {
  std::vector<MacroAction> out;
  for (int a = 0; a < n; ++a) out.push_back(MacroAction{{Action::discrete(a)}});
  return out;
}

}  // namespace

TEST_SUITE("baselines") {

TEST_CASE("UCB1 tries unvisited edges first") {
  PomcpPlanner planner(PomcpConfig{}, discrete_macros(3));
  UctNode node;
  node.edges.resize(3);
  node.edges[0].visits = 1;
  node.edges[0].mean = 100.0;
  node.visits = 1;
  CHECK(planner.select(node, 1.0) == 1);
  node.edges[1].visits = 1;
  node.visits = 2;
  CHECK(planner.select(node, 1.0) == 2);
  for (int i = 0; i < 3; ++i) node.edges[static_cast<std::size_t>(i)].visits = 10;
  node.edges[0].mean = 0.1;
  node.edges[1].mean = 0.9;
  node.edges[2].mean = 0.5;
  node.visits = 30;
  CHECK(planner.select(node, 0.0) == 1);
  node.edges[2].visits = 11;
  node.edges[0].visits = 11;
  CHECK(planner.best(node) == 0);
}

TEST_CASE("POMCP finds the better Bernoulli arm") {
  auto model = bandit(0.8, 0.2);
  PomcpConfig c;
  c.simulations = 1000;
  c.max_depth = 1;
  PomcpPlanner planner(c, discrete_macros(2));
  int correct = 0;
  for (int seed = 0; seed < 100; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed));
    UctNode root;
    for (int i = 0; i < 200; ++i) root.particles.push_back(model->sample_initial(rng));
    planner.plan(root, *model, rng);
    correct += planner.best(root) == 0;
  }
  CHECK(correct >= 95);
}

TEST_CASE("POMCP edge means are the mean of backed-up returns") {
  auto tiger = env::tiger();
  PomcpConfig c;
  c.simulations = 2000;
  c.max_depth = 8;
  PomcpPlanner planner(c, discrete_macros(3));
  UctNode root;
  Rng rng(12);
  for (int i = 0; i < 200; ++i) root.particles.push_back(tiger->sample_initial(rng));
  const auto stats = planner.plan(root, *tiger, rng);
  CHECK(stats.simulations == 2000);
  const auto report = audit_pomcp_tree(root);
  CHECK(report.ok());
  CHECK(report.nodes > 10);
  for (const auto& e : root.edges) CHECK(std::abs(e.mean) <= tiger->value_bound());
}

TEST_CASE("direction macros are equally spaced") {
  const auto flat = direction_macros(2, 1.5, 16, 4);
  REQUIRE(flat.size() == 16);
  for (std::size_t i = 0; i < flat.size(); ++i) {
    CHECK(flat[i].length() == 4);
    const Vec3 d = flat[i].primitives.front().direction;
    CHECK(d.norm() == doctest::Approx(1.5));
    CHECK(d.z() == 0.0);
    const Vec3 e = flat[(i + 1) % 16].primitives.front().direction;
    CHECK(std::acos(std::clamp(d.dot(e) / (1.5 * 1.5), -1.0, 1.0)) == doctest::Approx(2 * M_PI / 16));
  }
  const auto space = direction_macros(3, 1.0, 16, 2);
  REQUIRE(space.size() == 16);
  double min_gap = 10.0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    CHECK(space[i].primitives.front().direction.norm() == doctest::Approx(1.0));
    for (std::size_t j = i + 1; j < space.size(); ++j)
      min_gap = std::min(min_gap, (space[i].primitives.front().direction - space[j].primitives.front().direction).norm());
  }
  CHECK(min_gap > 0.3);
}

TEST_CASE("refpol returns the sampler proposal and is reproducible") {
  auto tiger = env::tiger();
  const auto sampler = UniformMacroSampler::discrete_actions(3);
  BeliefParticleSet b;
  b.push_back(State{});
  Rng r1(4), r2(4);
  for (int i = 0; i < 20; ++i) {
    const MacroAction x = refpol_step(b, sampler, *tiger, 8, r1);
    const MacroAction y = refpol_step(b, sampler, *tiger, 8, r2);
    CHECK(tiger->macro_action_key(x) == tiger->macro_action_key(y));
  }

  const UniformMacroSampler empty({});
  Rng rng(1);
  const MacroAction fallback = refpol_step(b, empty, *tiger, 8, rng);
  CHECK(fallback.length() >= 1);
  CHECK(fallback.length() <= 3);
}

TEST_CASE("refsolver with one candidate follows the reference policy") {
  VectorXd r(5);
  r << -1, -2, -1, -1, 4;
  auto chain = env::deterministic_chain(5, r, 2, 0.9);
  const UniformMacroSampler sampler({MacroAction{{Action::discrete(1)}}});
  const ZeroHeuristic h;
  PlannerConfig c;
  c.widening_coefficient = 0.0;
  c.simulations = 100;
  c.temperature = 1.0;
  EpisodeConfig ec;
  ec.max_steps = 7;
  RefSolverAgent solver(c, sampler, h);
  RefPolAgent refpol(sampler, c.max_macro_length);
  const auto a = run_episode(*chain, solver, ec);
  const auto b = run_episode(*chain, refpol, ec);
  REQUIRE(a.steps.size() == b.steps.size());
  CHECK(a.total_return == b.total_return);
  CHECK(audit_tree(solver.root(), c).widening_violations == 0);
}

TEST_CASE("refsolver prefers the higher-reward arm") {
  auto toy = env::absorbing_toy(1.0, 0.0, 0.5);
  const auto sampler = UniformMacroSampler::discrete_actions(2);
  const ZeroHeuristic h;
  PlannerConfig c;
  c.temperature = 5.0;
  c.widening_coefficient = 2.0;
  c.max_depth = 8;
  c.simulations = 500;
  RefSolverPlanner planner(c, sampler, h);
  HistoryNode root;
  root.particles.push_back(State{});
  Rng rng(3);
  planner.plan(root, *toy, rng);
  REQUIRE(root.edges.size() == 2);
  const int best = best_edge(root);
  CHECK(root.edges[static_cast<std::size_t>(best)].macro.primitives.front().index == 0);
  // Psi = log(1/|children|)/eta + R + D with D the running mean of gamma V(child).
  for (const auto& e : root.edges)
    CHECK(e.preference == doctest::Approx(std::log(0.5) / 5.0 + e.mean_reward + e.mean_value).epsilon(1e-9));
}

}  // TEST_SUITE
