#include "porpi/env/scenario_loader.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace porpi::env {

namespace {

using nlohmann::json;

struct Field {
  const json& value;
  std::string path;

  [[noreturn]] void fail(const std::string& message) const { throw ScenarioError(path, message); }

  bool has(const std::string& key) const { return value.is_object() && value.contains(key); }

  Field at(const std::string& key) const {
    if (!value.is_object()) fail("expected an object");
    const std::string p = path.empty() ? key : path + "." + key;
    if (!value.contains(key)) throw ScenarioError(p, "missing required field");
    return {value.at(key), p};
  }

  Field at(std::size_t i) const { return {value.at(i), path + "[" + std::to_string(i) + "]"}; }

  std::size_t size() const {
    if (!value.is_array()) fail("expected an array");
    return value.size();
  }

  double number() const {
    if (!value.is_number()) fail("expected a number");
    return value.get<double>();
  }

  int integer() const {
    if (!value.is_number_integer()) fail("expected an integer");
    return value.get<int>();
  }

  std::string text() const {
    if (!value.is_string()) fail("expected a string");
    return value.get<std::string>();
  }

  Vec3 point(int dims) const {
    const std::size_t n = size();
    if (n != 2 && n != 3) fail("expected 2 or 3 coordinates");
    if (dims == 3 && n != 3) fail("expected 3 coordinates");
    Vec3 p = Vec3::Zero();
    for (std::size_t i = 0; i < n; ++i) p(static_cast<Eigen::Index>(i)) = at(i).number();
    return p;
  }

  Box box(int dims) const {
    Box b{at("min").point(dims), at("max").point(dims)};
    if (!b.valid()) fail("min exceeds max");
    return b;
  }

  std::vector<Box> boxes(int dims) const {
    std::vector<Box> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).box(dims));
    return out;
  }

  double number_or(const std::string& key, double fallback) const { return has(key) ? at(key).number() : fallback; }
};

json parse(const std::string& text) {
  try {
    return json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ScenarioError("", std::string("malformed JSON: ") + e.what());
  }
}

std::vector<Box> optional_boxes(const Field& root, const std::string& key, int dims) {
  return root.has(key) ? root.at(key).boxes(dims) : std::vector<Box>{};
}

template <typename Fn>
void checked(const std::string& path, Fn&& fn) {
  try {
    fn();
  } catch (const DomainError& e) {
    throw ScenarioError(path, e.what());
  }
}

}  // namespace

ScenarioError::ScenarioError(const std::string& field, const std::string& message)
    : std::runtime_error((field.empty() ? std::string("scenario") : field) + ": " + message), field_(field) {}

MazeScenario parse_maze_scenario(const std::string& json_text, const std::filesystem::path&) {
  const json doc = parse(json_text);
  const Field root{doc, ""};
  MazeScenario sc;
  if (root.has("name")) sc.name = root.at("name").text();
  sc.dimension = root.has("dimension") ? root.at("dimension").integer() : 3;
  if (sc.dimension != 2 && sc.dimension != 3) root.at("dimension").fail("must be 2 or 3");
  const int dims = sc.dimension;
  sc.arena = root.at("arena").box(dims);
  sc.walls = optional_boxes(root, "walls", dims);
  sc.danger = optional_boxes(root, "danger", dims);
  sc.landmarks = optional_boxes(root, "landmarks", dims);
  sc.goals = root.at("goals").boxes(dims);
  const Field spawns = root.at("spawns");
  for (std::size_t i = 0; i < spawns.size(); ++i) sc.spawns.push_back(spawns.at(i).point(dims));
  if (root.has("spawn_prior")) {
    const Field prior = root.at("spawn_prior");
    for (std::size_t i = 0; i < prior.size(); ++i) sc.spawn_prior.push_back(prior.at(i).number());
  } else {
    sc.spawn_prior.assign(sc.spawns.size(), 1.0 / static_cast<double>(std::max<std::size_t>(1, sc.spawns.size())));
  }
  sc.speed = root.number_or("speed", sc.speed);
  if (!(sc.speed > 0.0)) root.at("speed").fail("must be positive");
  sc.noise_scale = root.number_or("noise_scale", sc.noise_scale);
  sc.discount = root.number_or("discount", sc.discount);
  sc.observation_grid = root.number_or("observation_grid", sc.observation_grid);
  if (root.has("rewards")) {
    const Field r = root.at("rewards");
    sc.goal_reward = r.number_or("goal", sc.goal_reward);
    sc.danger_reward = r.number_or("danger", sc.danger_reward);
    sc.step_reward = r.number_or("step", sc.step_reward);
  }
  for (std::size_t g = 0; g < sc.goals.size(); ++g)
    for (const auto& d : sc.danger)
      if (sc.goals[g].intersects(d)) root.at("goals").at(g).fail("overlaps a danger zone");
  checked("", [&] { MazeModel check(sc); });
  return sc;
}

RescueScenario parse_rescue_scenario(const std::string& json_text, const std::filesystem::path& base_dir) {
  const json doc = parse(json_text);
  const Field root{doc, ""};
  RescueScenario sc;
  if (root.has("name")) sc.name = root.at("name").text();
  sc.bounds = root.at("bounds").box(3);
  const Field terrain = root.at("terrain");
  const std::string type = terrain.at("type").text();
  if (type == "ridge") {
    RidgeSpec spec;
    spec.base = terrain.number_or("base", spec.base);
    spec.ridge_x = terrain.number_or("ridge_x", spec.ridge_x);
    spec.ridge_height = terrain.number_or("ridge_height", spec.ridge_height);
    spec.ridge_width = terrain.number_or("ridge_width", spec.ridge_width);
    spec.pass_y = terrain.number_or("pass_y", spec.pass_y);
    spec.pass_depth = terrain.number_or("pass_depth", spec.pass_depth);
    spec.pass_width = terrain.number_or("pass_width", spec.pass_width);
    const double cell = terrain.number_or("cell", 1.0);
    if (!(cell > 0.0)) terrain.at("cell").fail("must be positive");
    sc.terrain = Heightmap::ridge(sc.bounds.lo.x(), sc.bounds.lo.y(), sc.bounds.hi.x() - sc.bounds.lo.x(),
                                  sc.bounds.hi.y() - sc.bounds.lo.y(), cell, spec);
  } else if (type == "csv") {
    std::filesystem::path file = terrain.at("file").text();
    if (file.is_relative()) file = base_dir / file;
    const Field origin = terrain.at("origin");
    if (origin.size() != 2) origin.fail("expected 2 coordinates");
    const double cell = terrain.at("cell").number();
    if (!(cell > 0.0)) terrain.at("cell").fail("must be positive");
    checked(terrain.at("file").path, [&] {
      sc.terrain = Heightmap::from_csv(file.string(), origin.at(0).number(), origin.at(1).number(), cell);
    });
  } else {
    terrain.at("type").fail("must be 'ridge' or 'csv'");
  }
  sc.start = root.at("start").point(3);
  const Field objectives = root.at("objectives");
  for (std::size_t i = 0; i < objectives.size(); ++i) {
    const Field o = objectives.at(i);
    sc.objectives.push_back({o.at("center").point(3), o.at("radius").number()});
    if (!(sc.objectives.back().radius > 0.0)) o.at("radius").fail("must be positive");
  }
  if (root.has("nfz_schedule")) {
    const Field sched = root.at("nfz_schedule");
    for (std::size_t i = 0; i < sched.size(); ++i) {
      const Field e = sched.at(i);
      NfzEvent ev{e.at("step").integer(), e.at("zones").boxes(3)};
      if (ev.step < 0) e.at("step").fail("must be non-negative");
      if (!sc.schedule.empty() && ev.step <= sc.schedule.back().step) e.at("step").fail("steps must increase strictly");
      sc.schedule.push_back(std::move(ev));
    }
  }
  sc.speed = root.number_or("speed", sc.speed);
  if (!(sc.speed > 0.0)) root.at("speed").fail("must be positive");
  sc.transition_noise = root.number_or("transition_noise", sc.transition_noise);
  sc.observation_noise = root.number_or("observation_noise", sc.observation_noise);
  sc.discount = root.number_or("discount", sc.discount);
  sc.observation_grid = root.number_or("observation_grid", sc.observation_grid);
  sc.terrain_clearance = root.number_or("terrain_clearance", sc.terrain_clearance);
  if (root.has("rewards")) {
    const Field r = root.at("rewards");
    sc.objective_reward = r.number_or("objective", sc.objective_reward);
    sc.completion_reward = r.number_or("completion", sc.completion_reward);
    sc.collision_reward = r.number_or("collision", sc.collision_reward);
    sc.nfz_reward = r.number_or("nfz", sc.nfz_reward);
    sc.step_reward = r.number_or("step", sc.step_reward);
  }
  checked("", [&] { sc.validate(); });
  return sc;
}

LoadedScenario load_scenario_text(const std::string& json_text, const std::filesystem::path& base_dir) {
  const json doc = parse(json_text);
  const Field root{doc, ""};
  const std::string kind = root.at("kind").text();
  LoadedScenario out;
  out.kind = kind;
  if (kind == "maze") {
    auto model = std::make_shared<MazeModel>(parse_maze_scenario(json_text, base_dir));
    out.model = model;
    out.domain = model;
  } else if (kind == "rescue") {
    auto model = std::make_shared<RescueModel>(
        std::make_shared<const RescueScenario>(parse_rescue_scenario(json_text, base_dir)));
    out.model = model;
    out.domain = model;
  } else {
    root.at("kind").fail("must be 'maze' or 'rescue'");
  }
  return out;
}

LoadedScenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("", "cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_scenario_text(buffer.str(), path.parent_path());
}

}  // namespace porpi::env
