#pragma once

#include <map>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "porpi/core/particles.hpp"
#include "porpi/core/types.hpp"

namespace porpi {

struct HistoryNode;

/// Edge h -> h a carrying the running statistics of the preference backup.
struct ActionEdge {
  int id = 0;
  MacroAction macro;
  Key key;
  int visits = 0;
  double mean_reward = 0.0;  // R(h a)
  double mean_value = 0.0;   // D(h a)
  double preference = 0.0;   // Psi(h a)
  std::map<Key, std::unique_ptr<HistoryNode>> children;

  HistoryNode* child(const Key& observation_key) const;
  HistoryNode& child_or_create(const Key& observation_key, std::size_t particle_capacity);
};

struct HistoryNode {
  int visits = 0;
  /// Log-sum-exp of the children's preferences; 0 while the node has none.
  double value = 0.0;
  BeliefParticleSet particles;
  std::vector<ActionEdge> edges;

  explicit HistoryNode(std::size_t particle_capacity = 4096) : particles(particle_capacity) {}

  int find_edge(const Key& key) const;
  int add_edge(MacroAction macro, Key key);
  int child_count() const { return static_cast<int>(edges.size()); }
  Eigen::VectorXd preferences() const;
};

/// (1/eta) log sum exp(eta Psi) over the node's edges.
double logsumexp_value(const HistoryNode& node, double eta);

/// Draws an edge index with probability proportional to exp(eta Psi).
int sample_pref_softmax(const HistoryNode& node, double eta, Rng& rng);

/// Edge with the largest preference among visited edges (all edges if none is
/// visited). Ties go to the lowest id.
int best_edge(const HistoryNode& node);

std::size_t count_nodes(const HistoryNode& root);

}  // namespace porpi
