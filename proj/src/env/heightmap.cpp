#include "porpi/env/heightmap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "porpi/core/errors.hpp"

namespace porpi::env {

Heightmap::Heightmap() : heights_(Eigen::MatrixXd::Zero(1, 1)) {}

Heightmap::Heightmap(Eigen::MatrixXd heights, double x0, double y0, double cell)
    : heights_(std::move(heights)), x0_(x0), y0_(y0), cell_(cell) {
  if (heights_.size() == 0) throw DomainError("empty heightmap");
  if (!(cell_ > 0.0)) throw DomainError("heightmap cell size must be positive");
  if (!heights_.allFinite()) throw DomainError("heightmap contains non-finite samples");
}

Heightmap Heightmap::ridge(double x0, double y0, double width, double depth, double cell, const RidgeSpec& spec) {
  const auto cols = static_cast<Eigen::Index>(std::ceil(width / cell)) + 1;
  const auto rows = static_cast<Eigen::Index>(std::ceil(depth / cell)) + 1;
  Eigen::MatrixXd h(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double y = y0 + static_cast<double>(r) * cell;
    const double pass = 1.0 - spec.pass_depth * std::exp(-std::pow((y - spec.pass_y) / spec.pass_width, 2));
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double x = x0 + static_cast<double>(c) * cell;
      h(r, c) = spec.base + spec.ridge_height * std::exp(-std::pow((x - spec.ridge_x) / spec.ridge_width, 2)) * pass;
    }
  }
  return Heightmap(std::move(h), x0, y0, cell);
}

Heightmap Heightmap::from_csv(const std::string& path, double x0, double y0, double cell) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open heightmap '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cellv;
    while (std::getline(ss, cellv, ',')) {
      try {
        row.push_back(std::stod(cellv));
      } catch (const std::exception&) {
        throw DomainError("heightmap '" + path + "' has a non-numeric entry");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw DomainError("heightmap '" + path + "' has ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DomainError("heightmap '" + path + "' is empty");
  Eigen::MatrixXd h(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return Heightmap(std::move(h), x0, y0, cell);
}

double Heightmap::height(double x, double y) const {
  const double fx = std::clamp((x - x0_) / cell_, 0.0, static_cast<double>(heights_.cols() - 1));
  const double fy = std::clamp((y - y0_) / cell_, 0.0, static_cast<double>(heights_.rows() - 1));
  const auto c0 = static_cast<Eigen::Index>(std::floor(fx));
  const auto r0 = static_cast<Eigen::Index>(std::floor(fy));
  const auto c1 = std::min<Eigen::Index>(c0 + 1, heights_.cols() - 1);
  const auto r1 = std::min<Eigen::Index>(r0 + 1, heights_.rows() - 1);
  const double tx = fx - static_cast<double>(c0);
  const double ty = fy - static_cast<double>(r0);
  const double low = (1 - tx) * heights_(r0, c0) + tx * heights_(r0, c1);
  const double high = (1 - tx) * heights_(r1, c0) + tx * heights_(r1, c1);
  return (1 - ty) * low + ty * high;
}

}  // namespace porpi::env
