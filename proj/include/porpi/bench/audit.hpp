#pragma once

#include <string>
#include <vector>

#include "porpi/planner/episode.hpp"

namespace porpi::bench {

struct TraceAudit {
  std::vector<std::string> failures;
  double max_return_error = 0.0;
  std::size_t nfz_steps = 0;

  bool ok() const { return failures.empty(); }
};

/// Recomputes per-step, cumulative, total and discounted returns and checks
/// reward breakdowns sum to the rewards. With a scenario model the no-fly-zone
/// component of every primitive is checked against the zones active at its step.
TraceAudit audit_trace(const EpisodeTrace& trace, const PomdpModel* scenario = nullptr, double tolerance = 1e-9);

}  // namespace porpi::bench
