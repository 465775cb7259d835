#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "porpi/baselines/pomcp.hpp"
#include "porpi/planner/episode.hpp"
#include "porpi/prm/roadmap.hpp"

namespace porpi::bench {

struct ExperimentSpec {
  std::string name = "experiment";
  std::filesystem::path scenario;
  std::vector<std::string> planners;  // porpi, refsolver, pomcp, refpol
  std::vector<long> budgets;
  std::string budget_unit = "simulations";  // or "ms"
  int runs = 10;
  std::uint64_t base_seed = 1;
  std::filesystem::path output_dir;  // empty: nothing written
  int max_steps = 100;
  int particle_count = 200;
  PlannerConfig planner;
  baselines::PomcpConfig pomcp;
  int pomcp_directions = 16;
  prm::RoadmapConfig roadmap;
  std::uint64_t roadmap_seed = 7;
  std::filesystem::path roadmap_cache;  // empty: build in memory
  bool rebuild_roadmap = false;
  int threads = 0;  // 0: hardware concurrency
  bool keep_traces = true;

  void validate() const;
};

/// Reads a JSON spec; relative paths resolve against `base_dir`.
ExperimentSpec parse_experiment_spec(const std::string& json_text, const std::filesystem::path& base_dir = {});
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

struct EpisodeRow {
  std::string planner;
  long budget = 0;
  int run = 0;
  std::uint64_t world_seed = 0;
  std::uint64_t agent_seed = 0;
  double total_return = 0.0;
  double discounted_return = 0.0;
  bool success = false;
  int steps = 0;
  double planning_ms = 0.0;
  bool depleted = false;
  bool failed = false;
  std::string error;
  std::string trace_file;
};

struct CellSummary {
  std::string planner;
  long budget = 0;
  int runs = 0;
  int failures = 0;
  double success_rate = 0.0;
  double mean_return = 0.0;
  double ci_half_width = 0.0;
  double mean_discounted_return = 0.0;
  double mean_planning_ms = 0.0;
};

struct ExperimentResult {
  std::vector<EpisodeRow> rows;
  std::vector<CellSummary> cells;
  std::vector<EpisodeTrace> traces;  // parallel to rows when kept

  const CellSummary& cell(const std::string& planner, long budget) const;
  std::vector<double> returns(const std::string& planner, long budget) const;
};

/// Runs every (planner, budget, run) episode, in parallel with a
/// deterministic reduce, and writes tables, traces and a manifest when an
/// output directory is set.
ExperimentResult run_experiment(const ExperimentSpec& spec);

}  // namespace porpi::bench
