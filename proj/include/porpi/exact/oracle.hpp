#pragma once

#include <vector>

#include "porpi/exact/tabular_pomdp.hpp"

namespace porpi::exact {

/// Value iteration on a regular simplex grid (spacing 1/resolution) of the
/// belief MDP, with Freudenthal interpolation between grid points.
class BeliefGridOracle {
 public:
  BeliefGridOracle(const TabularPomdp& model, int resolution, double tolerance = 1e-10);

  double value(const Belief& b) const;
  double q_value(const Belief& b, int a) const;
  Eigen::MatrixXd q_table(const std::vector<Belief>& beliefs) const;

  int resolution() const { return resolution_; }
  std::size_t grid_size() const { return grid_.size(); }
  int iterations() const { return iterations_; }

  struct Stencil {
    std::vector<int> vertices;
    std::vector<double> weights;
  };
  /// Grid vertices and barycentric weights that interpolate `b`.
  Stencil interpolate(const Belief& b) const;

 private:
  int index_of(const std::vector<int>& cumulative) const;

  const TabularPomdp& model_;
  int resolution_;
  std::vector<std::vector<int>> grid_;  // cumulative coordinates
  std::vector<Belief> beliefs_;
  Eigen::VectorXd values_;
  int iterations_ = 0;
};

/// Grid spacing 0.01 for two states, 0.05 for three, 0.1 for four.
int default_grid_resolution(int states);

/// Q* at the given beliefs from a dense-grid oracle.
Eigen::MatrixXd oracle_qstar(const TabularPomdp& model, int resolution, const std::vector<Belief>& at);

}  // namespace porpi::exact
