#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "porpi/env/scenario_loader.hpp"

using namespace porpi;
using namespace porpi::env;

namespace {

std::filesystem::path scenario_path(const std::string& name) {
  return std::filesystem::path(PORPI_SOURCE_DIR) / "scenarios" / name;
}

std::shared_ptr<const RescueScenario> shipped_rescue() {
  const auto loaded = load_scenario(scenario_path("rescue.cfg"));
  return std::make_shared<const RescueScenario>(dynamic_cast<const RescueModel&>(*loaded.model).scenario());
}

Vec3 sample_variance(const std::vector<Vec3>& xs) {
  Vec3 mean = Vec3::Zero();
  for (const auto& x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  Vec3 var = Vec3::Zero();
  for (const auto& x : xs) var += (x - mean).cwiseAbs2();
  return var / static_cast<double>(xs.size() - 1);
}

std::string field_of(const std::string& text) {
  try {
    load_scenario_text(text);
  } catch (const ScenarioError& e) {
    return e.field();
  }
  return "<none>";
}

const char* kMaze = R"({
  "kind": "maze", "dimension": 2,
  "arena": {"min": [0, 0], "max": [10, 10]},
  "walls": [], "danger": [], "landmarks": [],
  "goals": [{"min": [8, 8], "max": [9, 9]}],
  "spawns": [[1, 1]], "speed": SPEED
})";

std::string maze_text(const std::string& speed) {
  std::string s = kMaze;
  s.replace(s.find("SPEED"), 5, speed);
  return s;
}

}  // namespace

TEST_SUITE("env") {

TEST_CASE("maze landmarks reveal position, open space is silent") {
  const auto loaded = load_scenario(scenario_path("maze3d.cfg"));
  const auto& maze = dynamic_cast<const MazeModel&>(*loaded.model);
  Rng rng(1);
  const Box& lm = maze.scenario().landmarks.front();
  const Observation inside = maze.observe(State{lm.center()}, Action::move(Vec3::UnitX()), rng);
  CHECK(inside.kind == Observation::Kind::Position);
  CHECK((inside.value - lm.center()).norm() == 0.0);
  const Observation face = maze.observe(State{Vec3(lm.lo.x(), lm.center().y(), lm.center().z())}, Action::move(Vec3::UnitX()), rng);
  CHECK(face.kind == Observation::Kind::Position);
  CHECK(maze.observe(State{Vec3(1, 1, 1)}, Action::move(Vec3::UnitX()), rng).is_null());
  CHECK(maze.observation_log_likelihood(State{Vec3(1, 1, 1)}, Action{}, Observation::null()) == 0.0);
}

TEST_CASE("noisy moves never end inside a wall") {
  const auto loaded = load_scenario(scenario_path("maze3d.cfg"));
  const auto& maze = dynamic_cast<const MazeModel&>(*loaded.model);
  Rng rng(2);
  State s = maze.sample_initial(rng);
  int inside = 0;
  for (int t = 0; t < 100000; ++t) {
    const Transition tr = maze.transition(s, maze.sample_random_action(rng), rng);
    for (const auto& w : maze.scenario().walls) inside += w.contains(tr.next.position);
    inside += !maze.scenario().arena.contains(tr.next.position);
    s = tr.next.terminal ? maze.sample_initial(rng) : tr.next;
  }
  CHECK(inside == 0);
}

TEST_CASE("slide stops in front of a wall") {
  const auto loaded = load_scenario(scenario_path("maze3d.cfg"));
  const auto& maze = dynamic_cast<const MazeModel&>(*loaded.model);
  const Vec3 p = maze.slide(Vec3(8.5, 5, 5), Vec3(3, 1, 0));
  CHECK(p.x() < 9.0);
  CHECK(p.x() > 8.9);
  CHECK(p.y() == doctest::Approx(6.0));
}

TEST_CASE("transition and observation noise have the configured covariance") {
  const auto loaded = load_scenario(scenario_path("maze3d.cfg"));
  const auto& maze = dynamic_cast<const MazeModel&>(*loaded.model);
  const auto rescue_sc = shipped_rescue();
  const RescueModel rescue(rescue_sc);
  Rng rng(3);
  std::vector<Vec3> maze_next, rescue_next, rescue_obs;
  const State m0{Vec3(5, 10, 5)};
  const State r0{Vec3(40, 30, 20)};
  for (int i = 0; i < 20000; ++i) {
    maze_next.push_back(maze.transition(m0, Action::move(Vec3::UnitX()), rng).next.position);
    rescue_next.push_back(rescue.transition(r0, Action::move(Vec3(2, 0, 0)), rng).next.position);
    rescue_obs.push_back(rescue.observe(r0, Action{}, rng).value);
  }
  const Vec3 vm = sample_variance(maze_next);
  const Vec3 vr = sample_variance(rescue_next);
  const Vec3 vo = sample_variance(rescue_obs);
  for (int i = 0; i < 3; ++i) {
    CHECK(vm(i) == doctest::Approx(0.02).epsilon(0.05));
    CHECK(vr(i) == doctest::Approx(0.5).epsilon(0.05));
    CHECK(vo(i) == doctest::Approx(0.2).epsilon(0.05));
  }
}

TEST_CASE("no-fly zones only cost reward while active") {
  const auto sc = shipped_rescue();
  const RescueModel early(sc, 0);
  const auto late = early.at_step(30);
  const auto cleared = early.at_step(100);
  const State s{Vec3(120, 5, 20)};
  const Action a = Action::move(Vec3(0, 2, 0));
  CHECK(early.reward_breakdown(s, a, early.transition_noiseless(s, a).next).count("nfz") == 0);
  const Transition tl = late->transition_noiseless(s, a);
  CHECK(late->reward_breakdown(s, a, tl.next).at("nfz") == -20.0);
  CHECK(tl.reward == doctest::Approx(-25.0));
  CHECK(cleared->transition_noiseless(s, a).reward == doctest::Approx(-5.0));
  CHECK(early.in_active_nfz(Vec3(90, 30, 20)));
  CHECK(!dynamic_cast<const RescueModel&>(*cleared).in_active_nfz(Vec3(90, 30, 20)));
}

TEST_CASE("objective reward is paid once") {
  const auto sc = shipped_rescue();
  const RescueModel m(sc, 100);
  const State s{Vec3(118, 15, 12)};
  const Transition first = m.transition_noiseless(s, Action::move(Vec3(2, 0, 0)));
  CHECK(first.next.visited == 1u);
  CHECK(first.reward == doctest::Approx(2000.0 - 5.0));
  const Transition second = m.transition_noiseless(first.next, Action::move(Vec3(0, 2, 0)));
  CHECK(second.reward == doctest::Approx(-5.0));
  CHECK(!second.next.terminal);
  CHECK(m.candidate_targets(second.next) == std::vector<int>{1});
}

TEST_CASE("flying into terrain is a terminal collision") {
  const auto sc = shipped_rescue();
  const RescueModel m(sc, 100);
  const State s{Vec3(40, 30, 3)};
  const Transition t = m.transition_noiseless(s, Action::move(Vec3(0, 0, -2)));
  CHECK(t.next.terminal);
  CHECK(t.reward == doctest::Approx(-2000.0));
  CHECK(m.reward_breakdown(s, Action{}, t.next).count("collision") == 1);
}

TEST_CASE("shipped scenarios load with their documented parameters") {
  const auto maze = load_scenario(scenario_path("maze3d.cfg"));
  CHECK(maze.kind == "maze");
  const auto& ms = dynamic_cast<const MazeModel&>(*maze.model).scenario();
  CHECK(ms.goal_reward == 2000.0);
  CHECK(ms.danger_reward == -500.0);
  CHECK(ms.step_reward == -5.0);
  const auto rescue = shipped_rescue();
  CHECK(rescue->schedule.size() >= 3);
  CHECK(rescue->objectives.size() == 2);
  CHECK(rescue->terrain.height(60, 5) > 20.0);
  CHECK(rescue->terrain.height(60, 30) < rescue->terrain.height(60, 5));
  const auto mini = load_scenario(scenario_path("mini_maze.cfg"));
  CHECK(mini.domain->dimension() == 2);
}

TEST_CASE("empty obstacle lists are valid") {
  const auto loaded = load_scenario_text(maze_text("1.0"));
  CHECK(loaded.domain->is_free(Vec3(5, 5, 0), 0.5));
  CHECK(!loaded.domain->is_free(Vec3(0.2, 5, 0), 0.5));
}

TEST_CASE("schema errors name the offending field") {
  CHECK(field_of(maze_text("-1")) == "speed");
  CHECK(field_of(maze_text("\"fast\"")) == "speed");
  std::string overlap = maze_text("1.0");
  overlap.replace(overlap.find("\"danger\": []"), 12, R"("danger": [{"min": [7, 7], "max": [8.5, 8.5]}])");
  CHECK(field_of(overlap) == "goals[0]");
  CHECK(field_of(R"({"kind": "maze"})") == "arena");
  CHECK(field_of(R"({"kind": "boat"})") == "kind");
  const std::string rescue = R"({
    "kind": "rescue",
    "bounds": {"min": [0, 0, 0], "max": [50, 50, 20]},
    "terrain": {"type": "ridge", "ridge_x": 25},
    "start": [2, 2, 10],
    "objectives": [{"center": [40, 40, 10], "radius": 2}],
    "nfz_schedule": [{"step": 5, "zones": []}, {"step": 5, "zones": []}]
  })";
  CHECK(field_of(rescue) == "nfz_schedule[1].step");
  CHECK_THROWS_AS(load_scenario_text("{not json"), ScenarioError);
}

TEST_CASE("heightmaps import from CSV") {
  const auto path = std::filesystem::temp_directory_path() / "porpi_heights.csv";
  {
    std::ofstream out(path);
    out << "1,2\n3,4\n";
  }
  const Heightmap h = Heightmap::from_csv(path.string(), 0.0, 0.0, 1.0);
  CHECK(h.height(0, 0) == 1.0);
  CHECK(h.height(1, 0) == 2.0);
  CHECK(h.height(0, 1) == 3.0);
  CHECK(h.height(0.5, 0.5) == doctest::Approx(2.5));
  CHECK(h.height(7, 9) == 4.0);
  const std::string text = R"({
    "kind": "rescue",
    "bounds": {"min": [0, 0, 0], "max": [10, 10, 10]},
    "terrain": {"type": "csv", "file": "porpi_heights.csv", "origin": [0, 0], "cell": 10},
    "start": [2, 2, 8],
    "objectives": [{"center": [8, 8, 8], "radius": 1}]
  })";
  const auto loaded = load_scenario_text(text, path.parent_path());
  CHECK(dynamic_cast<const RescueModel&>(*loaded.model).scenario().terrain.max_height() == 4.0);
  std::filesystem::remove(path);
  CHECK(field_of(text) == "terrain.file");
}

}  // TEST_SUITE
