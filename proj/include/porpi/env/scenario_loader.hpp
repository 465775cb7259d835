#pragma once

#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>

#include "porpi/env/maze.hpp"
#include "porpi/env/rescue.hpp"

namespace porpi::env {

/// Schema violation; the message starts with the offending field path.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& field, const std::string& message);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct LoadedScenario {
  std::string kind;  // "maze" or "rescue"
  std::shared_ptr<const PomdpModel> model;
  std::shared_ptr<const NavigationDomain> domain;
};

MazeScenario parse_maze_scenario(const std::string& json_text, const std::filesystem::path& base_dir = {});
RescueScenario parse_rescue_scenario(const std::string& json_text, const std::filesystem::path& base_dir = {});
LoadedScenario load_scenario_text(const std::string& json_text, const std::filesystem::path& base_dir = {});
LoadedScenario load_scenario(const std::filesystem::path& path);

}  // namespace porpi::env
