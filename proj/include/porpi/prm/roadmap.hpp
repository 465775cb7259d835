#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "porpi/env/navigation.hpp"

namespace porpi::prm {

struct RoadmapConfig {
  int nodes = 300;
  int neighbors = 10;
  double clearance_factor = 0.6;   // node and edge clearance, times the speed
  double resolution_factor = 0.25; // edge check resolution, times the speed
  int attempts_per_node = 200;
};

struct Edge {
  int to = 0;
  double length = 0.0;
};

constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// Probabilistic roadmap over free space. Node i < targets().size() is the
/// mandatory node of target i.
class Roadmap {
 public:
  Roadmap(std::vector<Vec3> nodes, std::vector<std::vector<Edge>> adjacency, std::size_t target_count,
          int dimension, double speed);

  /// Rejection-samples free nodes, adds every domain target, and links
  /// k-nearest pairs whose segments pass the clearance check. DomainError
  /// when a target lacks clearance or free space cannot be sampled.
  static Roadmap build(const env::NavigationDomain& domain, const RoadmapConfig& config, std::uint64_t seed);

  const std::vector<Vec3>& nodes() const { return nodes_; }
  const std::vector<std::vector<Edge>>& adjacency() const { return adjacency_; }
  std::size_t target_count() const { return target_count_; }
  std::size_t edge_count() const;
  int dimension() const { return dimension_; }
  double speed() const { return speed_; }

  /// Dijkstra distances from every node to node `to`.
  std::vector<double> distances_to(int to) const;
  /// Node sequence from -> to on a shortest path; empty if unreachable.
  std::vector<int> shortest_path(int from, int to) const;
  /// Distance from node to target i through the precomputed tables.
  double target_distance(int node, int target) const;
  int next_hop(int node, int target) const;
  /// True iff all targets share one connected component.
  bool targets_connected() const;
  /// Component label per node.
  std::vector<int> components() const;

  /// Nearest node whose straight segment from p is collision-free; -1 if none.
  int entry_node(const Vec3& p, const env::NavigationDomain& domain) const;
  /// Polyline p -> entry node -> ... -> target; empty when unreachable.
  std::vector<Vec3> path_to_target(const Vec3& p, int target, const env::NavigationDomain& domain) const;

  static bool segment_free(const Vec3& a, const Vec3& b, const env::NavigationDomain& domain, double clearance,
                           double resolution);

 private:
  void compute_tables();

  std::vector<Vec3> nodes_;
  std::vector<std::vector<Edge>> adjacency_;
  std::size_t target_count_ = 0;
  int dimension_ = 3;
  double speed_ = 1.0;
  std::vector<std::vector<double>> target_dist_;
  std::vector<std::vector<int>> target_next_;
};

}  // namespace porpi::prm
