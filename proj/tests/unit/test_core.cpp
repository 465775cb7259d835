#include <doctest.h>

#include <cmath>

#include "porpi/core/belief_update.hpp"
#include "porpi/core/macro.hpp"
#include "porpi/core/softmax.hpp"
#include "porpi/env/discrete_suite.hpp"
#include "porpi/env/maze.hpp"
#include "porpi/exact/tabular_pomdp.hpp"

using namespace porpi;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

env::MazeScenario open_maze() {
  env::MazeScenario sc;
  sc.dimension = 2;
  sc.arena = {Vec3(0, 0, 0), Vec3(20, 20, 0)};
  sc.goals = {{Vec3(17, 17, 0), Vec3(19, 19, 0)}};
  sc.landmarks = {{Vec3(0, 0, 0), Vec3(2, 2, 0)}};
  sc.spawns = {Vec3(10, 10, 0)};
  sc.spawn_prior = {1.0};
  return sc;
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("tiger listen reports the tiger side with the configured accuracy") {
  auto tiger = env::tiger();
  Rng rng(17);
  State s;
  s.index = 0;
  const int n = 100000;
  int left = 0;
  for (int i = 0; i < n; ++i) left += generative_step(*tiger, s, Action::discrete(0), rng).observation.index == 0;
  CHECK(static_cast<double>(left) / n == doctest::Approx(0.85).epsilon(0.01));
}

TEST_CASE("generative_step is deterministic under a fixed seed") {
  env::MazeModel maze(open_maze());
  State s;
  s.position = Vec3(10, 10, 0);
  Rng a(5), b(5);
  const auto x = generative_step(maze, s, Action::move(Vec3(1, 0, 0)), a);
  const auto y = generative_step(maze, s, Action::move(Vec3(1, 0, 0)), b);
  CHECK(x.next.position == y.next.position);
  CHECK(x.reward == y.reward);
}

TEST_CASE("terminal states absorb") {
  env::MazeModel maze(open_maze());
  State s;
  s.position = Vec3(18, 18, 0);
  s.terminal = true;
  Rng rng(1);
  const auto out = generative_step(maze, s, Action::move(Vec3(1, 0, 0)), rng);
  CHECK(out.next.terminal);
  CHECK(out.next.position == s.position);
  CHECK(out.reward == 0.0);
  CHECK(out.observation.is_null());
}

TEST_CASE("model contract violations are rejected") {
  env::MazeModel maze(open_maze());
  State s;
  s.position = Vec3(10, 10, 0);
  Rng rng(1);
  CHECK_THROWS_AS(generative_step(maze, s, Action::discrete(0), rng), ModelContractError);
  CHECK_THROWS_AS(generative_step(maze, s, Action::move(Vec3(0, 0, 1)), rng), ModelContractError);
}

TEST_CASE("macro_step discounts primitive rewards") {
  VectorXd r(4);
  r << -5, -5, 2000, 0;
  auto chain = env::deterministic_chain(4, r, 1, 0.99);
  State s;
  MacroAction m{{Action::discrete(0), Action::discrete(0), Action::discrete(0)}};
  Rng rng(3);
  const MacroStep out = macro_step(*chain, s, m, rng);
  CHECK(out.discounted_reward == doctest::Approx(-5.0 - 0.99 * 5.0 + 0.99 * 0.99 * 2000.0).epsilon(1e-12));
  CHECK(out.discounted_reward == doctest::Approx(1950.25));
  CHECK(out.steps_survived == 3);
  CHECK(out.observation.length() == 3);

  Rng r1(9), r2(9);
  const MacroStep one = macro_step(*chain, s, MacroAction{{Action::discrete(0)}}, r1);
  const StepSample prim = generative_step(*chain, s, Action::discrete(0), r2);
  CHECK(one.discounted_reward == prim.reward);
  CHECK(one.final_state.index == prim.next.index);
}

TEST_CASE("macro_step truncates at terminal entry") {
  MatrixXd advance(2, 2);
  advance << 0, 1, 0, 1;
  MatrixXd rewards(2, 1);
  rewards << 3, 0;
  exact::TabularPomdp model("stop", {advance}, {MatrixXd::Ones(2, 1)}, rewards, VectorXd::Unit(2, 0), 0.9,
                            {false, true});
  Rng rng(1);
  MacroAction m{{Action::discrete(0), Action::discrete(0), Action::discrete(0)}};
  const MacroStep out = macro_step(model, State{}, m, rng);
  CHECK(out.steps_survived == 1);
  CHECK(out.observation.length() == 1);
  CHECK(out.discounted_reward == 3.0);
  CHECK(out.final_state.terminal);
}

TEST_CASE("discounted macro reward is bounded") {
  env::MazeModel maze(open_maze());
  Rng rng(11);
  const double rmax = maze.reward_bound();
  for (int trial = 0; trial < 200; ++trial) {
    MacroAction m;
    const int len = 1 + trial % 8;
    for (int i = 0; i < len; ++i) m.primitives.push_back(maze.sample_random_action(rng));
    State s = maze.sample_initial(rng);
    const MacroStep out = macro_step(maze, s, m, rng);
    CHECK(std::abs(out.discounted_reward) <= rmax * (1 - std::pow(maze.discount(), len)) / (1 - maze.discount()) + 1e-9);
  }
}

TEST_CASE("tiger particle posterior matches exact Bayes") {
  auto tiger = env::tiger();
  Rng rng(23);
  BeliefParticleSet prior(20000);
  for (int i = 0; i < 10000; ++i) prior.push_back(tiger->sample_initial(rng));
  BeliefUpdateOptions opt;
  opt.target_count = 10000;
  const auto post = belief_update(prior, MacroAction{{Action::discrete(0)}},
                                  MacroObservation{{Observation::discrete(0)}}, *tiger, rng, opt);
  double left = 0;
  for (const auto& s : post) left += s.index == 0;
  left /= static_cast<double>(post.size());
  const double exact = 0.5 * 0.85 / (0.5 * 0.85 + 0.5 * 0.15);
  CHECK(std::abs(left - exact) <= 0.02);
}

TEST_CASE("noiseless observations keep only consistent particles") {
  auto chain = env::deterministic_chain(5, VectorXd::Ones(5));
  Rng rng(2);
  BeliefParticleSet b;
  for (int i = 0; i < 50; ++i) b.push_back(State{});
  const auto post = belief_update(b, MacroAction{{Action::discrete(0)}}, MacroObservation{{Observation::discrete(1)}},
                                  *chain, rng);
  for (const auto& s : post) CHECK(s.index == 1);
}

TEST_CASE("impossible observation depletes the filter") {
  env::MazeModel maze(open_maze());
  Rng rng(2);
  BeliefParticleSet b;
  State s;
  s.position = Vec3(10, 10, 0);
  for (int i = 0; i < 20; ++i) b.push_back(s);
  const MacroAction m{{Action::move(Vec3(1, 0, 0))}};
  const MacroObservation mo{{Observation::position(Vec3(1, 1, 0))}};
  CHECK_THROWS_AS(belief_update(b, m, mo, maze, rng), ParticleDepletion);
  const auto fb = belief_update_with_fallback(b, m, mo, maze, rng);
  CHECK(fb.depleted);
  CHECK(!fb.particles.empty());
}

TEST_CASE("expected immediate reward") {
  MatrixXd rewards(2, 1);
  rewards << 10, -10;
  exact::TabularPomdp m("r", {MatrixXd::Identity(2, 2)}, {MatrixXd::Ones(2, 1)}, rewards, VectorXd::Constant(2, 0.5),
                        0.9);
  CHECK(exact::expected_immediate_reward(VectorXd::Constant(2, 0.5), 0, m) == doctest::Approx(0.0));
  MatrixXd r2(2, 1);
  r2 << 1, 2;
  exact::TabularPomdp m2("r", {MatrixXd::Identity(2, 2)}, {MatrixXd::Ones(2, 1)}, r2, VectorXd::Constant(2, 0.5), 0.9);
  VectorXd b(2);
  b << 0.2, 0.8;
  CHECK(exact::expected_immediate_reward(b, 0, m2) == doctest::Approx(1.8).epsilon(1e-12));

  BeliefParticleSet point;
  State s;
  s.index = 1;
  for (int i = 0; i < 10; ++i) point.push_back(s);
  Rng rng(1);
  CHECK(expected_immediate_reward(point, Action::discrete(0), m2, rng) == 2.0);
}

TEST_CASE("observation likelihood is a distribution") {
  auto tiger = env::tiger();
  CHECK(exact::observation_likelihood(VectorXd::Constant(2, 0.5), 0, 0, *tiger) == doctest::Approx(0.5));
  auto three = env::three_state();
  Rng rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    VectorXd b(3);
    b << u(rng), u(rng), u(rng);
    b /= b.sum();
    for (int a = 0; a < 2; ++a) {
      double total = 0.0;
      for (int o = 0; o < 2; ++o) {
        const double p = exact::observation_likelihood(b, a, o, *three);
        CHECK(p >= 0.0);
        total += p;
      }
      CHECK(std::abs(total - 1.0) <= 1e-12);
    }
  }
  auto chain = env::deterministic_chain(3, VectorXd::Ones(3));
  CHECK(exact::observation_likelihood(VectorXd::Unit(3, 0), 0, 1, *chain) == 1.0);
  CHECK(exact::observation_likelihood(VectorXd::Unit(3, 0), 0, 2, *chain) == 0.0);
  env::MazeModel maze(open_maze());
  CHECK_THROWS_AS(exact::observation_likelihood(VectorXd::Ones(1), 0, 0, maze), UnsupportedOperation);
}

TEST_CASE("log-sum-exp identities") {
  Eigen::VectorXd x(4);
  x << 0.3, -1.2, 2.5, 0.0;
  for (double eta : {0.1, 1.0, 10.0}) {
    const double base = log_sum_exp(x, eta);
    CHECK(std::abs(log_sum_exp((x.array() + 7.25).matrix(), eta) - (base + 7.25)) <= 1e-12);
    CHECK(x.maxCoeff() <= base);
    CHECK(base <= x.maxCoeff() + std::log(4.0) / eta + 1e-12);
    const Eigen::VectorXd p = softmax(x, eta);
    const Eigen::VectorXd q = softmax((x.array() - 100.0).matrix(), eta);
    CHECK((p - q).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(p.sum() - 1.0) <= 1e-12);
  }
  CHECK(log_sum_exp(Eigen::VectorXd::Constant(1, 3.7), 2.0) == 3.7);
  CHECK(std::abs(log_sum_exp(Eigen::VectorXd::Zero(2), 1.0) - std::log(2.0)) <= 1e-12);
  CHECK(std::abs(log_sum_exp(Eigen::Vector2d(3, 1), 1000.0) - 3.0) <= 1e-3);
  CHECK(std::isfinite(log_sum_exp(Eigen::Vector2d(1e6, 1e6 - 1), 5.0)));
}

}  // TEST_SUITE
