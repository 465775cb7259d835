#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "porpi/bench/audit.hpp"
#include "porpi/bench/experiment.hpp"
#include "porpi/env/discrete_suite.hpp"
#include "porpi/env/scenario_loader.hpp"
#include "porpi/exact/convergence.hpp"
#include "porpi/planner/trace_io.hpp"

namespace fs = std::filesystem;
using namespace porpi;

namespace {

int run_command(const fs::path& spec_path, int threads, bool rebuild) {
  bench::ExperimentSpec spec = bench::load_experiment_spec(spec_path);
  if (threads > 0) spec.threads = threads;
  spec.rebuild_roadmap = rebuild;
  const bench::ExperimentResult result = bench::run_experiment(spec);

  std::shared_ptr<const PomdpModel> scenario;
  if (spec.scenario.string().rfind("discrete:", 0) != 0) scenario = env::load_scenario(spec.scenario).model;
  int audit_failures = 0;
  for (std::size_t i = 0; i < result.traces.size(); ++i) {
    if (result.rows[i].failed) continue;
    const bench::TraceAudit audit = bench::audit_trace(result.traces[i], scenario.get());
    if (!audit.ok()) {
      ++audit_failures;
      std::cerr << "audit failed for " << result.rows[i].trace_file << ": " << audit.failures.front() << '\n';
    }
  }

  std::printf("%-10s %8s %6s %8s %14s %12s %12s\n", "planner", "budget", "runs", "succ%", "E[return]", "+-95%CI",
              "plan ms");
  for (const auto& c : result.cells)
    std::printf("%-10s %8ld %6d %8.1f %14.2f %12.2f %12.1f\n", c.planner.c_str(), c.budget, c.runs,
                100.0 * c.success_rate, c.mean_return, c.ci_half_width, c.mean_planning_ms);
  if (!spec.output_dir.empty()) std::printf("outputs written to %s\n", spec.output_dir.string().c_str());
  int failures = 0;
  for (const auto& r : result.rows) failures += r.failed ? 1 : 0;
  if (failures > 0) std::printf("%d episode(s) failed; see episodes.csv\n", failures);
  return audit_failures > 0 ? 2 : 0;
}

int converge_command(const std::string& model_id, double delta, const std::vector<double>& etas, int k_max,
                     const std::string& scheme, std::uint64_t seed, const std::string& out) {
  const auto model = env::make_discrete_model(model_id);
  for (double eta : etas) {
    exact::ConvergenceOptions options;
    options.delta = delta;
    options.eta = eta;
    options.k_max = k_max;
    options.scheme = exact::parse_scheme(scheme);
    options.seed = seed;
    const exact::ConvergenceResult result = exact::run_convergence(*model, options);
    if (out.empty()) {
      exact::write_convergence_csv(std::cout, result);
      continue;
    }
    fs::path path = out;
    if (etas.size() > 1) {
      std::ostringstream suffix;
      suffix << "_eta" << eta;
      path = path.parent_path() / (path.stem().string() + suffix.str() + path.extension().string());
    }
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream file(path);
    exact::write_convergence_csv(file, result);
    std::printf("%s: cover=%zu reachable=%zu final error=%.6g\n", path.string().c_str(), result.cover_size,
                result.reachable, result.rows.back().error);
  }
  return 0;
}

int audit_command(const fs::path& trace_path, const fs::path& scenario_path) {
  const EpisodeTrace trace = read_trace_file(trace_path.string());
  std::shared_ptr<const PomdpModel> scenario;
  fs::path source = scenario_path;
  if (source.empty() && !trace.scenario.empty() && fs::exists(trace.scenario)) source = trace.scenario;
  if (!source.empty()) scenario = env::load_scenario(source).model;
  const bench::TraceAudit audit = bench::audit_trace(trace, scenario.get());
  for (const auto& f : audit.failures) std::cout << "FAIL " << f << '\n';
  std::printf("%s: %zu steps, return %.6f, max recomputation error %.3g, nfz steps %zu -> %s\n",
              trace_path.string().c_str(), trace.steps.size(), trace.total_return, audit.max_return_error,
              audit.nfz_steps, audit.ok() ? "OK" : "FAILED");
  return audit.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark harness for the preference-iteration planner"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run an experiment spec");
  fs::path spec_path;
  int threads = 0;
  bool rebuild = false;
  run->add_option("--spec", spec_path, "Experiment spec (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--threads", threads, "Worker threads (default: spec or hardware)");
  run->add_flag("--rebuild-roadmap", rebuild, "Ignore the roadmap cache");

  auto* converge = app.add_subcommand("converge", "Tabular convergence study");
  std::string model_id;
  double delta = 0.05;
  std::vector<double> etas;
  int k_max = 100;
  std::string scheme = "exact";
  std::uint64_t seed = 1;
  std::string out;
  converge->add_option("--model", model_id, "Discrete model id")
      ->required()
      ->check(CLI::IsMember(env::discrete_model_ids()));
  converge->add_option("--delta", delta, "Covering radius")->required();
  converge->add_option("--eta", etas, "Temperature (repeat for a sweep)")->required();
  converge->add_option("--kmax", k_max, "Last iteration");
  converge->add_option("--scheme", scheme, "exact | sync | async");
  converge->add_option("--seed", seed, "Sampling seed");
  converge->add_option("--out", out, "CSV path (default: stdout)");

  auto* audit = app.add_subcommand("audit", "Recompute and check an episode trace");
  fs::path trace_path;
  fs::path scenario_path;
  audit->add_option("--trace", trace_path, "Trace file (JSONL)")->required()->check(CLI::ExistingFile);
  audit->add_option("--scenario", scenario_path, "Scenario config for zone checks");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return run_command(spec_path, threads, rebuild);
    if (*converge) return converge_command(model_id, delta, etas, k_max, scheme, seed, out);
    if (*audit) return audit_command(trace_path, scenario_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
