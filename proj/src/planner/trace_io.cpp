#include "porpi/planner/trace_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace porpi {

using nlohmann::json;

namespace {

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 json_vec(const json& j) { return Vec3(j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()); }

json observation_json(const Observation& o) {
  switch (o.kind) {
    case Observation::Kind::Null:
      return nullptr;
    case Observation::Kind::Discrete:
      return o.index;
    case Observation::Kind::Position:
      return vec_json(o.value);
  }
  return nullptr;
}

Observation json_observation(const json& j) {
  if (j.is_null()) return Observation::null();
  if (j.is_number_integer()) return Observation::discrete(j.get<int>());
  return Observation::position(json_vec(j));
}

json action_json(const Action& a) {
  if (a.is_discrete()) return a.index;
  return vec_json(a.direction);
}

Action json_action(const json& j) {
  if (j.is_number_integer()) return Action::discrete(j.get<int>());
  return Action::move(json_vec(j));
}

}  // namespace

void write_trace(std::ostream& out, const EpisodeTrace& trace) {
  // Full double precision so audits can recompute returns to 1e-9.
  const json header = {{"type", "header"},        {"planner", trace.planner},
                       {"scenario", trace.scenario}, {"world_seed", trace.world_seed},
                       {"agent_seed", trace.agent_seed}, {"discount", trace.discount},
                       {"max_steps", trace.max_steps}};
  out << header.dump() << '\n';
  for (const auto& s : trace.steps) {
    json macro = json::array();
    for (const auto& a : s.macro.primitives) macro.push_back(action_json(a));
    json obs = json::array();
    for (const auto& o : s.observation.primitives) obs.push_back(observation_json(o));
    json prims = json::array();
    for (const auto& p : s.primitives) {
      prims.push_back({{"step", p.step},
                       {"position", vec_json(p.position)},
                       {"visited", p.visited},
                       {"terminal", p.terminal},
                       {"reward", p.reward},
                       {"breakdown", p.breakdown}});
    }
    const json rec = {{"type", "step"},
                      {"index", s.index},
                      {"start_step", s.start_step},
                      {"belief", {{"mean", vec_json(s.belief_mean)},
                                  {"spread", s.belief_spread},
                                  {"particles", s.particle_count}}},
                      {"macro_action", macro},
                      {"macro_observation", obs},
                      {"primitives", prims},
                      {"reward", s.reward},
                      {"discounted_reward", s.discounted_reward},
                      {"cumulative_return", s.cumulative_return},
                      {"cumulative_discounted_return", s.cumulative_discounted_return},
                      {"planning_ms", s.planning_ms},
                      {"simulations", s.simulations},
                      {"tree_size", s.tree_size},
                      {"depleted", s.depleted}};
    out << rec.dump() << '\n';
  }
  const json summary = {{"type", "summary"},
                        {"total_return", trace.total_return},
                        {"discounted_return", trace.discounted_return},
                        {"primitive_steps", trace.primitive_steps},
                        {"terminal", trace.terminal},
                        {"success", trace.success},
                        {"depletion_flagged", trace.depletion_flagged}};
  out << summary.dump() << '\n';
}

void write_trace_file(const std::string& path, const EpisodeTrace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace: " + path);
  write_trace(out, trace);
}

EpisodeTrace read_trace(std::istream& in) {
  EpisodeTrace trace;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    const std::string type = j.at("type").get<std::string>();
    if (type == "header") {
      trace.planner = j.at("planner").get<std::string>();
      trace.scenario = j.at("scenario").get<std::string>();
      trace.world_seed = j.at("world_seed").get<std::uint64_t>();
      trace.agent_seed = j.at("agent_seed").get<std::uint64_t>();
      trace.discount = j.at("discount").get<double>();
      trace.max_steps = j.at("max_steps").get<int>();
    } else if (type == "step") {
      StepRecord s;
      s.index = j.at("index").get<int>();
      s.start_step = j.at("start_step").get<int>();
      s.belief_mean = json_vec(j.at("belief").at("mean"));
      s.belief_spread = j.at("belief").at("spread").get<double>();
      s.particle_count = j.at("belief").at("particles").get<std::size_t>();
      for (const auto& a : j.at("macro_action")) s.macro.primitives.push_back(json_action(a));
      for (const auto& o : j.at("macro_observation")) s.observation.primitives.push_back(json_observation(o));
      for (const auto& p : j.at("primitives")) {
        PrimitiveRecord r;
        r.step = p.at("step").get<int>();
        r.position = json_vec(p.at("position"));
        r.visited = p.at("visited").get<std::uint32_t>();
        r.terminal = p.at("terminal").get<bool>();
        r.reward = p.at("reward").get<double>();
        r.breakdown = p.at("breakdown").get<RewardBreakdown>();
        s.primitives.push_back(std::move(r));
      }
      s.reward = j.at("reward").get<double>();
      s.discounted_reward = j.at("discounted_reward").get<double>();
      s.cumulative_return = j.at("cumulative_return").get<double>();
      s.cumulative_discounted_return = j.at("cumulative_discounted_return").get<double>();
      s.planning_ms = j.at("planning_ms").get<double>();
      s.simulations = j.at("simulations").get<int>();
      s.tree_size = j.at("tree_size").get<std::size_t>();
      s.depleted = j.at("depleted").get<bool>();
      trace.steps.push_back(std::move(s));
    } else if (type == "summary") {
      trace.total_return = j.at("total_return").get<double>();
      trace.discounted_return = j.at("discounted_return").get<double>();
      trace.primitive_steps = j.at("primitive_steps").get<int>();
      trace.terminal = j.at("terminal").get<bool>();
      trace.success = j.at("success").get<bool>();
      trace.depletion_flagged = j.at("depletion_flagged").get<bool>();
    }
  }
  return trace;
}

EpisodeTrace read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read trace: " + path);
  return read_trace(in);
}

}  // namespace porpi
