#pragma once

#include <string>

#include <Eigen/Core>

namespace porpi::env {

struct RidgeSpec {
  double base = 2.0;
  double ridge_x = 60.0;
  double ridge_height = 30.0;
  double ridge_width = 8.0;
  double pass_y = 30.0;
  double pass_depth = 0.0;  // fraction of the ridge removed at the pass
  double pass_width = 6.0;
};

/// Terrain elevation on a regular grid, bilinear between samples and clamped
/// to the grid outside it. Row r is y = y0 + r * cell, column c is x = x0 + c * cell.
class Heightmap {
 public:
  Heightmap();
  Heightmap(Eigen::MatrixXd heights, double x0, double y0, double cell);

  static Heightmap ridge(double x0, double y0, double width, double depth, double cell, const RidgeSpec& spec);
  /// Comma-separated grid, one row per line.
  static Heightmap from_csv(const std::string& path, double x0, double y0, double cell);

  double height(double x, double y) const;
  double max_height() const { return heights_.maxCoeff(); }
  const Eigen::MatrixXd& samples() const { return heights_; }
  double cell() const { return cell_; }

 private:
  Eigen::MatrixXd heights_;
  double x0_ = 0.0;
  double y0_ = 0.0;
  double cell_ = 1.0;
};

}  // namespace porpi::env
