#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "porpi/exact/tabular_pomdp.hpp"

namespace porpi::exact {

enum class Scheme { Exact, Synchronous, Asynchronous };

Scheme parse_scheme(const std::string& name);

struct ConvergenceOptions {
  double delta = 0.05;
  double eta = 1.0;
  int k_max = 100;
  Scheme scheme = Scheme::Exact;
  std::uint64_t seed = 1;
  double alpha = 0.05;
  int grid_resolution = 0;  // 0 picks default_grid_resolution
  int horizon = -1;         // -1 picks recommended_horizon
  int sample_scale = 1;     // N_k = M_k = scale (k + 1)
};

struct ConvergenceRow {
  int k = 0;
  double error = 0.0;  // ||Q* - Q^{pi_k}_cover||_inf
  double theorem1 = 0.0;
  double theorem1_with_projection = 0.0;
  double theorem2 = 0.0;
  double wall_ms = 0.0;
};

struct ConvergenceResult {
  std::vector<ConvergenceRow> rows;
  std::size_t cover_size = 0;
  std::size_t reachable = 0;
};

/// Iterates the chosen scheme from Psi_0 = 0 for k = 0..k_max, measuring the
/// cover-restricted policy error against the grid oracle at every k. For the
/// asynchronous scheme k counts round-robin sweeps over cover x actions.
ConvergenceResult run_convergence(const TabularPomdp& model, const ConvergenceOptions& options);

void write_convergence_csv(std::ostream& out, const ConvergenceResult& result);

}  // namespace porpi::exact
