#include "porpi/bench/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "porpi/baselines/refpol.hpp"
#include "porpi/baselines/refsolver.hpp"
#include "porpi/bench/seeds.hpp"
#include "porpi/bench/stats.hpp"
#include "porpi/env/discrete_suite.hpp"
#include "porpi/env/scenario_loader.hpp"
#include "porpi/planner/trace_io.hpp"
#include "porpi/prm/path_heuristic.hpp"
#include "porpi/prm/roadmap_io.hpp"
#include "porpi/prm/sampler.hpp"

namespace porpi::bench {

namespace {

using nlohmann::json;

const std::vector<std::string> kPlanners{"porpi", "refsolver", "pomcp", "refpol"};

/// Everything an episode needs that is shared read-only across threads.
struct Setup {
  std::shared_ptr<const PomdpModel> model;
  std::shared_ptr<const ActionSampler> sampler;
  std::shared_ptr<const ValueHeuristic> heuristic;
  std::vector<MacroAction> pomcp_actions;
};

Setup prepare(const ExperimentSpec& spec) {
  Setup setup;
  const std::string scenario = spec.scenario.string();
  const std::string prefix = "discrete:";
  if (scenario.rfind(prefix, 0) == 0) {
    auto model = env::make_discrete_model(scenario.substr(prefix.size()));
    setup.model = model;
    auto sampler = std::make_shared<UniformMacroSampler>(UniformMacroSampler::discrete_actions(model->action_count()));
    setup.pomcp_actions = sampler->macros();
    setup.sampler = sampler;
    setup.heuristic = std::make_shared<ZeroHeuristic>();
    return setup;
  }
  const env::LoadedScenario loaded = env::load_scenario(spec.scenario);
  setup.model = loaded.model;
  auto roadmap = std::make_shared<const prm::Roadmap>(
      spec.roadmap_cache.empty()
          ? prm::Roadmap::build(*loaded.domain, spec.roadmap, spec.roadmap_seed)
          : prm::load_or_build_roadmap(*loaded.domain, spec.roadmap, spec.roadmap_seed, spec.roadmap_cache,
                                       spec.rebuild_roadmap));
  setup.sampler = std::make_shared<prm::PrmActionSampler>(roadmap, loaded.domain, spec.planner.max_macro_length);
  setup.heuristic = std::make_shared<prm::PathRolloutHeuristic>(roadmap, loaded.domain);
  setup.pomcp_actions = baselines::direction_macros(loaded.domain->dimension(), loaded.domain->speed(),
                                                    spec.pomcp_directions, spec.planner.max_macro_length);
  return setup;
}

std::unique_ptr<Agent> make_agent(const ExperimentSpec& spec, const Setup& setup, const std::string& planner,
                                  long budget) {
  PlannerConfig pc = spec.planner;
  baselines::PomcpConfig uc = spec.pomcp;
  if (spec.budget_unit == "ms") {
    pc.time_budget_ms = static_cast<double>(budget);
    uc.time_budget_ms = static_cast<double>(budget);
  } else {
    pc.simulations = static_cast<int>(budget);
    uc.simulations = static_cast<int>(budget);
  }
  uc.particle_target = pc.particle_target;
  uc.particle_capacity = pc.particle_capacity;
  if (planner == "porpi") return std::make_unique<PorpiAgent>(pc, *setup.sampler, *setup.heuristic);
  if (planner == "refsolver") return std::make_unique<baselines::RefSolverAgent>(pc, *setup.sampler, *setup.heuristic);
  if (planner == "pomcp") return std::make_unique<baselines::PomcpAgent>(uc, setup.pomcp_actions);
  if (planner == "refpol")
    return std::make_unique<baselines::RefPolAgent>(*setup.sampler, pc.max_macro_length, pc.particle_target);
  throw DomainError("unknown planner '" + planner + "'");
}

std::string trace_name(const std::string& planner, long budget, int run) {
  return planner + "_" + std::to_string(budget) + "_" + std::to_string(run) + ".jsonl";
}

json spec_json(const ExperimentSpec& spec) {
  return {{"name", spec.name},
          {"scenario", spec.scenario.string()},
          {"planners", spec.planners},
          {"budgets", spec.budgets},
          {"budget_unit", spec.budget_unit},
          {"runs", spec.runs},
          {"base_seed", spec.base_seed},
          {"max_steps", spec.max_steps},
          {"particle_count", spec.particle_count},
          {"planner",
           {{"kappa", spec.planner.widening_coefficient},
            {"alpha", spec.planner.widening_exponent},
            {"max_depth", spec.planner.max_depth},
            {"eta", spec.planner.temperature},
            {"max_macro_length", spec.planner.max_macro_length},
            {"particle_target", spec.planner.particle_target}}},
          {"pomcp",
           {{"exploration", spec.pomcp.exploration},
            {"max_depth", spec.pomcp.max_depth},
            {"directions", spec.pomcp_directions}}},
          {"roadmap",
           {{"nodes", spec.roadmap.nodes},
            {"neighbors", spec.roadmap.neighbors},
            {"clearance_factor", spec.roadmap.clearance_factor},
            {"seed", spec.roadmap_seed}}}};
}

void write_outputs(const ExperimentSpec& spec, const ExperimentResult& result) {
  namespace fs = std::filesystem;
  fs::create_directories(spec.output_dir / "traces");
  {
    std::ofstream out(spec.output_dir / "episodes.csv");
    out.precision(17);
    out << "planner,budget,run,world_seed,agent_seed,total_return,discounted_return,success,steps,planning_ms,"
           "depleted,failed,error,trace\n";
    for (const auto& r : result.rows) {
      std::string err = r.error;
      std::replace(err.begin(), err.end(), ',', ';');
      std::replace(err.begin(), err.end(), '\n', ' ');
      out << r.planner << ',' << r.budget << ',' << r.run << ',' << r.world_seed << ',' << r.agent_seed << ','
          << r.total_return << ',' << r.discounted_return << ',' << r.success << ',' << r.steps << ','
          << r.planning_ms << ',' << r.depleted << ',' << r.failed << ',' << err << ',' << r.trace_file << '\n';
    }
  }
  {
    std::ofstream out(spec.output_dir / "results.csv");
    out.precision(10);
    out << "planner,budget,runs,failures,success_rate,mean_return,ci95_half_width,mean_discounted_return,"
           "mean_planning_ms\n";
    for (const auto& c : result.cells)
      out << c.planner << ',' << c.budget << ',' << c.runs << ',' << c.failures << ',' << c.success_rate << ','
          << c.mean_return << ',' << c.ci_half_width << ',' << c.mean_discounted_return << ',' << c.mean_planning_ms
          << '\n';
  }
  for (std::size_t i = 0; i < result.traces.size(); ++i)
    if (!result.rows[i].failed) write_trace_file((spec.output_dir / result.rows[i].trace_file).string(), result.traces[i]);
  json manifest = {{"spec", spec_json(spec)},
                   {"metric", "total_return is the undiscounted episode return; +- is a 95% Student-t interval"},
                   {"seeds",
                    {{"agent", "splitmix64(fnv1a(\"base|planner|budget|run\"))"},
                     {"world", "splitmix64(fnv1a(\"world|base|run\"))"}}},
                   {"episodes", result.rows.size()}};
  std::ofstream(spec.output_dir / "manifest.json") << manifest.dump(2) << '\n';
}

}  // namespace

void ExperimentSpec::validate() const {
  if (runs < 1) throw DomainError("runs must be >= 1");
  if (budgets.empty()) throw DomainError("budgets must be nonempty");
  if (planners.empty()) throw DomainError("planners must be nonempty");
  for (const auto& p : planners)
    if (std::find(kPlanners.begin(), kPlanners.end(), p) == kPlanners.end())
      throw DomainError("unknown planner '" + p + "'");
  for (long b : budgets)
    if (b < 0) throw DomainError("budgets must be non-negative");
  if (budget_unit != "simulations" && budget_unit != "ms") throw DomainError("budget unit must be simulations or ms");
  if (max_steps < 1 || particle_count < 1) throw DomainError("max_steps and particle_count must be positive");
  planner.validate();
}

ExperimentSpec parse_experiment_spec(const std::string& json_text, const std::filesystem::path& base_dir) {
  const json doc = json::parse(json_text, nullptr, true, true);
  ExperimentSpec spec;
  auto path_of = [&](const std::string& p) {
    std::filesystem::path f = p;
    return f.is_relative() ? base_dir / f : f;
  };
  spec.name = doc.value("name", spec.name);
  const std::string scenario = doc.at("scenario").get<std::string>();
  spec.scenario = scenario.rfind("discrete:", 0) == 0 ? std::filesystem::path(scenario) : path_of(scenario);
  spec.planners = doc.at("planners").get<std::vector<std::string>>();
  spec.budgets = doc.at("budgets").get<std::vector<long>>();
  spec.budget_unit = doc.value("budget_unit", spec.budget_unit);
  spec.runs = doc.value("runs", spec.runs);
  spec.base_seed = doc.value("base_seed", spec.base_seed);
  if (doc.contains("output")) spec.output_dir = path_of(doc.at("output").get<std::string>());
  spec.max_steps = doc.value("max_steps", spec.max_steps);
  spec.particle_count = doc.value("particle_count", spec.particle_count);
  spec.threads = doc.value("threads", spec.threads);
  if (doc.contains("planner")) {
    const json& p = doc.at("planner");
    spec.planner.widening_coefficient = p.value("kappa", spec.planner.widening_coefficient);
    spec.planner.widening_exponent = p.value("alpha", spec.planner.widening_exponent);
    spec.planner.max_depth = p.value("max_depth", spec.planner.max_depth);
    spec.planner.temperature = p.value("eta", spec.planner.temperature);
    spec.planner.max_macro_length = p.value("max_macro_length", spec.planner.max_macro_length);
    spec.planner.particle_target = p.value("particle_target", spec.planner.particle_target);
  }
  if (doc.contains("pomcp")) {
    const json& p = doc.at("pomcp");
    spec.pomcp.exploration = p.value("exploration", spec.pomcp.exploration);
    spec.pomcp.max_depth = p.value("max_depth", spec.pomcp.max_depth);
    spec.pomcp_directions = p.value("directions", spec.pomcp_directions);
  }
  if (doc.contains("roadmap")) {
    const json& r = doc.at("roadmap");
    spec.roadmap.nodes = r.value("nodes", spec.roadmap.nodes);
    spec.roadmap.neighbors = r.value("neighbors", spec.roadmap.neighbors);
    spec.roadmap.clearance_factor = r.value("clearance_factor", spec.roadmap.clearance_factor);
    spec.roadmap_seed = r.value("seed", spec.roadmap_seed);
    if (r.contains("cache")) spec.roadmap_cache = path_of(r.at("cache").get<std::string>());
  }
  spec.validate();
  return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_spec(buffer.str(), path.parent_path());
}

const CellSummary& ExperimentResult::cell(const std::string& planner, long budget) const {
  for (const auto& c : cells)
    if (c.planner == planner && c.budget == budget) return c;
  throw DomainError("no cell for " + planner + " at budget " + std::to_string(budget));
}

std::vector<double> ExperimentResult::returns(const std::string& planner, long budget) const {
  std::vector<double> out;
  for (const auto& r : rows)
    if (r.planner == planner && r.budget == budget && !r.failed) out.push_back(r.total_return);
  return out;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const Setup setup = prepare(spec);

  struct Job {
    std::string planner;
    long budget;
    int run;
  };
  std::vector<Job> jobs;
  for (const auto& p : spec.planners) {
    // The planning budget means nothing to refpol; one cell per budget keeps tables aligned.
    for (long b : spec.budgets)
      for (int r = 0; r < spec.runs; ++r) jobs.push_back({p, b, r});
  }

  ExperimentResult result;
  result.rows.resize(jobs.size());
  result.traces.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      EpisodeRow& row = result.rows[i];
      row.planner = job.planner;
      row.budget = job.budget;
      row.run = job.run;
      row.world_seed = world_seed(spec.base_seed, job.run);
      row.agent_seed = episode_seed(spec.base_seed, job.planner, job.budget, job.run);
      row.trace_file = "traces/" + trace_name(job.planner, job.budget, job.run);
      try {
        auto agent = make_agent(spec, setup, job.planner, job.budget);
        EpisodeConfig ec;
        ec.max_steps = spec.max_steps;
        ec.particle_count = spec.particle_count;
        ec.world_seed = row.world_seed;
        ec.agent_seed = row.agent_seed;
        EpisodeTrace trace = run_episode(*setup.model, *agent, ec);
        trace.scenario = spec.scenario.string();
        row.total_return = trace.total_return;
        row.discounted_return = trace.discounted_return;
        row.success = trace.success;
        row.steps = trace.primitive_steps;
        row.depleted = trace.depletion_flagged;
        for (const auto& s : trace.steps) row.planning_ms += s.planning_ms;
        result.traces[i] = std::move(trace);
      } catch (const std::exception& e) {
        row.failed = true;
        row.error = e.what();
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t threads =
      std::min<std::size_t>(jobs.size(), spec.threads > 0 ? static_cast<std::size_t>(spec.threads) : hw);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& p : spec.planners) {
    for (long b : spec.budgets) {
      CellSummary cell;
      cell.planner = p;
      cell.budget = b;
      std::vector<double> returns, discounted, planning;
      int successes = 0;
      for (const auto& r : result.rows) {
        if (r.planner != p || r.budget != b) continue;
        ++cell.runs;
        if (r.failed) {
          ++cell.failures;
          continue;
        }
        returns.push_back(r.total_return);
        discounted.push_back(r.discounted_return);
        planning.push_back(r.planning_ms);
        successes += r.success ? 1 : 0;
      }
      cell.success_rate = cell.runs > 0 ? static_cast<double>(successes) / cell.runs : 0.0;
      const Summary s = summarize(returns);
      cell.mean_return = s.mean;
      cell.ci_half_width = s.ci_half_width;
      cell.mean_discounted_return = summarize(discounted).mean;
      cell.mean_planning_ms = summarize(planning).mean;
      result.cells.push_back(cell);
    }
  }
  if (!spec.output_dir.empty()) write_outputs(spec, result);
  if (!spec.keep_traces) result.traces.clear();
  return result;
}

}  // namespace porpi::bench
