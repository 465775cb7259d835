#include <doctest.h>

#include <numeric>
#include <set>
#include <sstream>

#include "porpi/bench/audit.hpp"
#include "porpi/bench/experiment.hpp"
#include "porpi/bench/seeds.hpp"
#include "porpi/bench/stats.hpp"
#include "porpi/planner/trace_io.hpp"

using namespace porpi;
using namespace porpi::bench;

namespace {

ExperimentSpec tiger_spec(int runs) {
  ExperimentSpec spec;
  spec.scenario = "discrete:tiger";
  spec.planners = {"porpi", "refsolver", "pomcp", "refpol"};
  spec.budgets = {50, 200};
  spec.runs = runs;
  spec.base_seed = 17;
  spec.max_steps = 12;
  spec.planner.temperature = 0.5;
  spec.pomcp.max_depth = 10;
  spec.planner.max_depth = 10;
  spec.threads = 2;
  return spec;
}

}  // namespace

TEST_SUITE("bench") {

TEST_CASE("seed hashing matches reference values") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafull);
  CHECK(episode_seed(1, "porpi", 100, 0) == splitmix64(fnv1a("1|porpi|100|0")));
  CHECK(world_seed(1, 3) == splitmix64(fnv1a("world|1|3")));
  std::set<std::uint64_t> seen;
  for (const char* p : {"porpi", "pomcp"})
    for (long b : {10L, 20L})
      for (int r = 0; r < 5; ++r) seen.insert(episode_seed(9, p, b, r));
  CHECK(seen.size() == 20);
}

TEST_CASE("Welch test and confidence interval match reference values") {
  const std::vector<double> a{3.1, 2.9, 4.2, 3.8, 3.3, 4.0, 3.6};
  const std::vector<double> b{2.5, 3.0, 2.2, 2.8, 3.1, 2.0};
  const TTestResult w = welch_one_sided(a, b);
  CHECK(w.t == doctest::Approx(3.741129604425198).epsilon(1e-10));
  CHECK(w.df == doctest::Approx(10.912764473653072).epsilon(1e-10));
  CHECK(w.p_value == doctest::Approx(0.0016521079320600974).epsilon(1e-8));
  CHECK(welch_one_sided(b, a).p_value == doctest::Approx(1.0 - 0.0016521079320600974).epsilon(1e-8));
  const Summary s = summarize({1, 2, 3, 4, 5});
  CHECK(s.mean == 3.0);
  CHECK(s.ci_half_width == doctest::Approx(1.9632431614775607).epsilon(1e-10));
  CHECK(summarize({4.0}).ci_half_width == 0.0);
}

TEST_CASE("experiments are deterministic and audit clean") {
  const ExperimentSpec spec = tiger_spec(3);
  const ExperimentResult first = run_experiment(spec);
  ExperimentSpec serial = spec;
  serial.threads = 1;
  const ExperimentResult second = run_experiment(serial);
  REQUIRE(first.rows.size() == 4 * 2 * 3);
  REQUIRE(first.rows.size() == second.rows.size());
  for (std::size_t i = 0; i < first.rows.size(); ++i) {
    CHECK(first.rows[i].planner == second.rows[i].planner);
    CHECK(first.rows[i].total_return == second.rows[i].total_return);
    CHECK(first.rows[i].agent_seed == second.rows[i].agent_seed);
    CHECK(!first.rows[i].failed);
  }
  for (const auto& t : first.traces) CHECK(audit_trace(t).ok());
  for (const auto& c : first.cells) {
    const auto r = first.returns(c.planner, c.budget);
    CHECK(c.mean_return == doctest::Approx(std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size())));
  }
  for (std::size_t i = 0; i < first.rows.size(); ++i)
    CHECK(first.rows[i].world_seed == world_seed(spec.base_seed, first.rows[i].run));
}

TEST_CASE("a single run has a zero-width interval") {
  ExperimentSpec spec = tiger_spec(1);
  spec.planners = {"refpol"};
  spec.budgets = {0};
  const ExperimentResult r = run_experiment(spec);
  REQUIRE(r.cells.size() == 1);
  CHECK(r.cells[0].ci_half_width == 0.0);
  CHECK_THROWS_AS(r.cell("porpi", 0), DomainError);
}

TEST_CASE("the audit detects tampered traces") {
  ExperimentSpec spec = tiger_spec(1);
  spec.planners = {"porpi"};
  spec.budgets = {100};
  const ExperimentResult r = run_experiment(spec);
  REQUIRE(!r.traces.empty());
  EpisodeTrace t = r.traces.front();
  REQUIRE(!t.steps.empty());
  CHECK(audit_trace(t).ok());
  EpisodeTrace bad_total = t;
  bad_total.total_return += 1.0;
  CHECK(!audit_trace(bad_total).ok());
  EpisodeTrace bad_step = t;
  bad_step.steps.front().primitives.front().reward += 0.5;
  CHECK(!audit_trace(bad_step).ok());
  EpisodeTrace bad_breakdown = t;
  bad_breakdown.steps.front().primitives.front().breakdown["bonus"] = 3.0;
  CHECK(!audit_trace(bad_breakdown).ok());
}

TEST_CASE("traces round-trip through JSON lines") {
  ExperimentSpec spec = tiger_spec(1);
  spec.planners = {"pomcp"};
  spec.budgets = {60};
  const EpisodeTrace t = run_experiment(spec).traces.front();
  std::stringstream buf;
  write_trace(buf, t);
  const EpisodeTrace back = read_trace(buf);
  CHECK(back.planner == t.planner);
  CHECK(back.world_seed == t.world_seed);
  CHECK(back.agent_seed == t.agent_seed);
  CHECK(back.total_return == t.total_return);
  CHECK(back.discounted_return == t.discounted_return);
  REQUIRE(back.steps.size() == t.steps.size());
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    CHECK(back.steps[i].reward == t.steps[i].reward);
    CHECK(back.steps[i].macro.length() == t.steps[i].macro.length());
    CHECK(back.steps[i].primitives.size() == t.steps[i].primitives.size());
  }
  CHECK(audit_trace(back).ok());
}

TEST_CASE("invalid specs are rejected") {
  CHECK_THROWS_AS(parse_experiment_spec(R"({"scenario": "discrete:tiger", "planners": ["magic"], "budgets": [1]})"),
                  DomainError);
  CHECK_THROWS_AS(parse_experiment_spec(R"({"scenario": "discrete:tiger", "planners": ["porpi"], "budgets": []})"),
                  DomainError);
  CHECK_THROWS_AS(
      parse_experiment_spec(R"({"scenario": "discrete:tiger", "planners": ["porpi"], "budgets": [1], "runs": 0})"),
      DomainError);
  CHECK_THROWS_AS(parse_experiment_spec(
                      R"({"scenario": "discrete:tiger", "planners": ["porpi"], "budgets": [1], "budget_unit": "s"})"),
                  DomainError);
  const ExperimentSpec ok = parse_experiment_spec(
      R"({"scenario": "discrete:tiger", "planners": ["porpi"], "budgets": [5], "planner": {"eta": 0.2}})");
  CHECK(ok.planner.temperature == 0.2);
  CHECK(ok.output_dir.empty());
}

}  // TEST_SUITE
