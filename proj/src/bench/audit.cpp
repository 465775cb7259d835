#include "porpi/bench/audit.hpp"

#include <cmath>
#include <sstream>

#include "porpi/env/rescue.hpp"

namespace porpi::bench {

namespace {

template <typename... Args>
std::string describe(Args&&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

}  // namespace

TraceAudit audit_trace(const EpisodeTrace& trace, const PomdpModel* scenario, double tolerance) {
  TraceAudit audit;
  auto check = [&](double reported, double recomputed, const std::string& what) {
    const double err = std::abs(reported - recomputed);
    audit.max_return_error = std::max(audit.max_return_error, err);
    if (!(err <= tolerance * std::max(1.0, std::abs(recomputed))))
      audit.failures.push_back(describe(what, ": reported ", reported, " recomputed ", recomputed));
  };

  double total = 0.0;
  double discounted = 0.0;
  double discount = 1.0;
  int expected_step = 0;
  bool ended = false;
  for (const auto& step : trace.steps) {
    if (ended) audit.failures.push_back(describe("step ", step.index, ": recorded after a terminal state"));
    if (step.start_step != expected_step)
      audit.failures.push_back(describe("step ", step.index, ": starts at ", step.start_step, " expected ", expected_step));
    if (step.primitives.size() > step.macro.primitives.size())
      audit.failures.push_back(describe("step ", step.index, ": more primitives than the macro"));
    double step_total = 0.0;
    double step_discounted = 0.0;
    for (const auto& p : step.primitives) {
      if (p.step != expected_step) audit.failures.push_back(describe("primitive at step ", p.step, ": out of order"));
      step_total += p.reward;
      step_discounted += discount * p.reward;
      discount *= trace.discount;
      double parts = 0.0;
      for (const auto& [name, value] : p.breakdown) parts += value;
      if (std::abs(parts - p.reward) > tolerance * std::max(1.0, std::abs(p.reward)))
        audit.failures.push_back(describe("primitive at step ", p.step, ": breakdown sums to ", parts,
                                          " but reward is ", p.reward));
      if (const auto* rescue = scenario != nullptr ? dynamic_cast<const env::RescueModel*>(scenario) : nullptr) {
        const auto view = rescue->at_step(p.step);
        const auto& frozen = dynamic_cast<const env::RescueModel&>(*view);
        const bool collided = p.breakdown.count("collision") > 0;
        const bool expected = !collided && frozen.in_active_nfz(p.position);
        const bool logged = p.breakdown.count("nfz") > 0;
        if (logged) ++audit.nfz_steps;
        if (expected != logged)
          audit.failures.push_back(describe("primitive at step ", p.step, ": no-fly-zone penalty ",
                                            logged ? "logged" : "missing", " but zone ",
                                            expected ? "active" : "inactive"));
      }
      ++expected_step;
      if (p.terminal) ended = true;
    }
    check(step.reward, step_total, describe("step ", step.index, " reward"));
    check(step.discounted_reward, step_discounted, describe("step ", step.index, " discounted reward"));
    total += step_total;
    discounted += step_discounted;
    check(step.cumulative_return, total, describe("step ", step.index, " cumulative return"));
    check(step.cumulative_discounted_return, discounted, describe("step ", step.index, " cumulative discounted return"));
  }
  check(trace.total_return, total, "total return");
  check(trace.discounted_return, discounted, "discounted return");
  if (trace.primitive_steps != expected_step)
    audit.failures.push_back(describe("primitive step count ", trace.primitive_steps, " expected ", expected_step));
  if (trace.primitive_steps > trace.max_steps) audit.failures.push_back("episode exceeded its step budget");
  return audit;
}

}  // namespace porpi::bench
