#include "porpi/prm/roadmap.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <set>

#include "porpi/core/errors.hpp"

namespace porpi::prm {

namespace {

struct DijkstraResult {
  std::vector<double> dist;
  std::vector<int> pred;
};

DijkstraResult dijkstra(const std::vector<std::vector<Edge>>& adj, int source) {
  DijkstraResult r{std::vector<double>(adj.size(), kUnreachable), std::vector<int>(adj.size(), -1)};
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  r.dist[static_cast<std::size_t>(source)] = 0.0;
  queue.push({0.0, source});
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (d > r.dist[static_cast<std::size_t>(u)]) continue;
    for (const auto& e : adj[static_cast<std::size_t>(u)]) {
      const double nd = d + e.length;
      if (nd < r.dist[static_cast<std::size_t>(e.to)]) {
        r.dist[static_cast<std::size_t>(e.to)] = nd;
        r.pred[static_cast<std::size_t>(e.to)] = u;
        queue.push({nd, e.to});
      }
    }
  }
  return r;
}

}  // namespace

Roadmap::Roadmap(std::vector<Vec3> nodes, std::vector<std::vector<Edge>> adjacency, std::size_t target_count,
                 int dimension, double speed)
    : nodes_(std::move(nodes)),
      adjacency_(std::move(adjacency)),
      target_count_(target_count),
      dimension_(dimension),
      speed_(speed) {
  if (adjacency_.size() != nodes_.size()) throw DomainError("adjacency does not match the node list");
  if (target_count_ > nodes_.size()) throw DomainError("more targets than nodes");
  compute_tables();
}

bool Roadmap::segment_free(const Vec3& a, const Vec3& b, const env::NavigationDomain& domain, double clearance,
                           double resolution) {
  const double len = (b - a).norm();
  const int n = std::max(1, static_cast<int>(std::ceil(len / resolution)));
  for (int i = 0; i <= n; ++i)
    if (!domain.is_free(a + (b - a) * (static_cast<double>(i) / n), clearance)) return false;
  return true;
}

Roadmap Roadmap::build(const env::NavigationDomain& domain, const RoadmapConfig& config, std::uint64_t seed) {
  if (config.nodes < 0 || config.neighbors < 1) throw DomainError("invalid roadmap size");
  const double v = domain.speed();
  const double clearance = config.clearance_factor * v;
  const double resolution = config.resolution_factor * v;
  const int dims = domain.dimension();
  const env::Box box = domain.bounds();

  std::vector<Vec3> nodes = domain.targets();
  const std::size_t target_count = nodes.size();
  for (std::size_t i = 0; i < target_count; ++i)
    if (!domain.is_free(nodes[i], clearance))
      throw DomainError("target " + std::to_string(i) + " lacks roadmap clearance");

  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const long budget = static_cast<long>(config.nodes) * config.attempts_per_node;
  int accepted = 0;
  for (long attempt = 0; attempt < budget && accepted < config.nodes; ++attempt) {
    Vec3 p = Vec3::Zero();
    for (int i = 0; i < dims; ++i) p(i) = box.lo(i) + u(rng) * (box.hi(i) - box.lo(i));
    if (!domain.is_free(p, clearance)) continue;
    nodes.push_back(p);
    ++accepted;
  }
  if (accepted < config.nodes) throw DomainError("free-space sampling exhausted its retry budget");

  const std::size_t n = nodes.size();
  std::vector<std::vector<Edge>> adjacency(n);
  std::set<std::pair<std::size_t, std::size_t>> tried;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::iota(order.begin(), order.end(), 0);
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(config.neighbors) + 1, n);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::size_t l, std::size_t r) {
                        const double dl = (nodes[l] - nodes[i]).squaredNorm();
                        const double dr = (nodes[r] - nodes[i]).squaredNorm();
                        return dl < dr || (dl == dr && l < r);
                      });
    for (std::size_t m = 0; m < k; ++m) {
      const std::size_t j = order[m];
      if (j == i) continue;
      const auto key = std::minmax(i, j);
      if (!tried.insert(key).second) continue;
      if (!segment_free(nodes[i], nodes[j], domain, clearance, resolution)) continue;
      const double len = (nodes[i] - nodes[j]).norm();
      adjacency[i].push_back({static_cast<int>(j), len});
      adjacency[j].push_back({static_cast<int>(i), len});
    }
  }
  return Roadmap(std::move(nodes), std::move(adjacency), target_count, dims, v);
}

void Roadmap::compute_tables() {
  target_dist_.clear();
  target_next_.clear();
  for (std::size_t t = 0; t < target_count_; ++t) {
    DijkstraResult r = dijkstra(adjacency_, static_cast<int>(t));
    target_dist_.push_back(std::move(r.dist));
    target_next_.push_back(std::move(r.pred));
  }
}

std::size_t Roadmap::edge_count() const {
  std::size_t total = 0;
  for (const auto& a : adjacency_) total += a.size();
  return total / 2;
}

std::vector<double> Roadmap::distances_to(int to) const { return dijkstra(adjacency_, to).dist; }

std::vector<int> Roadmap::shortest_path(int from, int to) const {
  const DijkstraResult r = dijkstra(adjacency_, to);
  if (r.dist[static_cast<std::size_t>(from)] == kUnreachable) return {};
  std::vector<int> path{from};
  while (path.back() != to) path.push_back(r.pred[static_cast<std::size_t>(path.back())]);
  return path;
}

double Roadmap::target_distance(int node, int target) const {
  return target_dist_[static_cast<std::size_t>(target)][static_cast<std::size_t>(node)];
}

int Roadmap::next_hop(int node, int target) const {
  return target_next_[static_cast<std::size_t>(target)][static_cast<std::size_t>(node)];
}

std::vector<int> Roadmap::components() const {
  std::vector<int> label(nodes_.size(), -1);
  int next = 0;
  for (std::size_t s = 0; s < nodes_.size(); ++s) {
    if (label[s] >= 0) continue;
    std::vector<int> stack{static_cast<int>(s)};
    label[s] = next;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const auto& e : adjacency_[static_cast<std::size_t>(u)]) {
        if (label[static_cast<std::size_t>(e.to)] < 0) {
          label[static_cast<std::size_t>(e.to)] = next;
          stack.push_back(e.to);
        }
      }
    }
    ++next;
  }
  return label;
}

bool Roadmap::targets_connected() const {
  if (target_count_ < 2) return true;
  for (std::size_t t = 1; t < target_count_; ++t)
    if (target_dist_[0][t] == kUnreachable) return false;
  return true;
}

int Roadmap::entry_node(const Vec3& p, const env::NavigationDomain& domain) const {
  std::vector<std::size_t> order(nodes_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return (nodes_[l] - p).squaredNorm() < (nodes_[r] - p).squaredNorm();
  });
  for (std::size_t i : order)
    if (segment_free(p, nodes_[i], domain, 0.0, 0.25 * speed_)) return static_cast<int>(i);
  return -1;
}

std::vector<Vec3> Roadmap::path_to_target(const Vec3& p, int target, const env::NavigationDomain& domain) const {
  if (target < 0 || static_cast<std::size_t>(target) >= target_count_) throw DomainError("target out of range");
  const auto& dist = target_dist_[static_cast<std::size_t>(target)];
  std::vector<std::size_t> order;
  order.reserve(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (dist[i] != kUnreachable) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return (nodes_[l] - p).squaredNorm() < (nodes_[r] - p).squaredNorm();
  });
  constexpr int kCandidates = 4;
  int found = 0;
  int best = -1;
  double best_cost = kUnreachable;
  for (std::size_t i : order) {
    if (!segment_free(p, nodes_[i], domain, 0.0, 0.25 * speed_)) continue;
    const double cost = (nodes_[i] - p).norm() + dist[i];
    if (cost < best_cost) {
      best_cost = cost;
      best = static_cast<int>(i);
    }
    if (++found == kCandidates) break;
  }
  if (best < 0) return {};
  std::vector<Vec3> polyline{p};
  for (int u = best; u >= 0; u = next_hop(u, target)) {
    if ((nodes_[static_cast<std::size_t>(u)] - polyline.back()).norm() > 1e-9)
      polyline.push_back(nodes_[static_cast<std::size_t>(u)]);
    if (u == target) break;
  }
  return polyline;
}

}  // namespace porpi::prm
