#include "porpi/env/maze.hpp"

#include <cmath>
#include <limits>
#include <algorithm>

namespace porpi::env {

namespace {

constexpr double kWallGap = 1e-6;

}  // namespace

void MazeScenario::validate() const {
  if (dimension != 2 && dimension != 3) throw DomainError("maze dimension must be 2 or 3");
  if (!arena.valid()) throw DomainError("arena box is inverted");
  if (!(speed > 0.0)) throw DomainError("speed must be positive");
  if (!(noise_scale >= 0.0)) throw DomainError("noise scale must be non-negative");
  if (!(discount > 0.0 && discount < 1.0)) throw DomainError("discount must lie in (0, 1)");
  if (!(observation_grid > 0.0)) throw DomainError("observation grid must be positive");
  if (spawns.empty()) throw DomainError("at least one spawn point required");
  if (spawn_prior.size() != spawns.size()) throw DomainError("spawn prior must match the spawn points");
  double total = 0.0;
  for (double w : spawn_prior) {
    if (!(w >= 0.0)) throw DomainError("spawn prior weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("spawn prior must sum to 1");
  if (goals.empty()) throw DomainError("at least one goal box required");
  for (const auto* list : {&walls, &danger, &landmarks, &goals})
    for (const auto& b : *list)
      if (!b.valid()) throw DomainError("inverted box");
  for (const auto& g : goals)
    for (const auto& d : danger)
      if (g.intersects(d)) throw DomainError("goal and danger boxes overlap");
  for (const auto& p : spawns) {
    if (!arena.contains(p)) throw DomainError("spawn point outside the arena");
    for (const auto& w : walls)
      if (w.contains(p)) throw DomainError("spawn point inside a wall");
  }
}

MazeModel::MazeModel(MazeScenario scenario) : scenario_(std::move(scenario)) {
  if (scenario_.dimension == 2) {
    auto flatten = [](Box& b) {
      b.lo.z() = -1.0;
      b.hi.z() = 1.0;
    };
    flatten(scenario_.arena);
    for (auto* list : {&scenario_.walls, &scenario_.danger, &scenario_.landmarks, &scenario_.goals})
      for (auto& b : *list) flatten(b);
    for (auto& p : scenario_.spawns) p.z() = 0.0;
  }
  scenario_.validate();
}

double MazeModel::reward_bound() const {
  return std::max({std::abs(scenario_.goal_reward), std::abs(scenario_.danger_reward), std::abs(scenario_.step_reward)});
}

State MazeModel::sample_initial(Rng& rng) const {
  std::discrete_distribution<int> pick(scenario_.spawn_prior.begin(), scenario_.spawn_prior.end());
  State s;
  s.position = scenario_.spawns[static_cast<std::size_t>(pick(rng))];
  return s;
}

void MazeModel::validate(const State& s, const Action& a) const {
  if (a.is_discrete()) throw ModelContractError("maze actions are direction vectors");
  if (!a.direction.allFinite() || !s.position.allFinite()) throw ModelContractError("non-finite state or action");
  if (scenario_.dimension == 2 && (a.direction.z() != 0.0 || s.position.z() != 0.0))
    throw ModelContractError("planar maze needs zero z components");
}

Vec3 MazeModel::slide(const Vec3& start, const Vec3& d) const {
  Vec3 p = start;
  const Box& arena = scenario_.arena;
  for (int i = 0; i < scenario_.dimension; ++i) {
    double target = std::clamp(p(i) + d(i), arena.lo(i), arena.hi(i));
    for (const auto& w : scenario_.walls) {
      bool overlaps = true;
      for (int j = 0; j < 3 && overlaps; ++j)
        if (j != i && (p(j) < w.lo(j) || p(j) > w.hi(j))) overlaps = false;
      if (!overlaps) continue;
      if (target > p(i) && p(i) < w.lo(i) && target >= w.lo(i)) target = w.lo(i) - kWallGap;
      if (target < p(i) && p(i) > w.hi(i) && target <= w.hi(i)) target = w.hi(i) + kWallGap;
    }
    p(i) = target;
  }
  return p;
}

Transition MazeModel::settle(const State& s, const Vec3& next) const {
  Transition t;
  t.next = s;
  t.next.position = next;
  for (const auto& d : scenario_.danger) {
    if (d.contains(next)) {
      t.next.terminal = true;
      t.reward = scenario_.danger_reward;
      return t;
    }
  }
  for (const auto& g : scenario_.goals) {
    if (g.contains(next)) {
      t.next.terminal = true;
      t.next.visited |= 1u;
      t.reward = scenario_.goal_reward;
      return t;
    }
  }
  t.reward = scenario_.step_reward;
  return t;
}

Transition MazeModel::transition(const State& s, const Action& a, Rng& rng) const {
  validate(s, a);
  std::normal_distribution<double> noise(0.0, std::sqrt(scenario_.noise_scale * scenario_.speed));
  Vec3 d = a.direction;
  for (int i = 0; i < scenario_.dimension; ++i) d(i) += noise(rng);
  return settle(s, slide(s.position, d));
}

Transition MazeModel::transition_noiseless(const State& s, const Action& a) const {
  validate(s, a);
  return settle(s, slide(s.position, a.direction));
}

bool MazeModel::in_landmark(const Vec3& p) const {
  for (const auto& l : scenario_.landmarks)
    if (l.contains(p)) return true;
  return false;
}

Observation MazeModel::observe(const State& next, const Action&, Rng&) const {
  return in_landmark(next.position) ? Observation::position(next.position) : Observation::null();
}

double MazeModel::observation_log_likelihood(const State& next, const Action&, const Observation& o) const {
  constexpr double kImpossible = -std::numeric_limits<double>::infinity();
  const bool inside = in_landmark(next.position);
  if (o.is_null()) return inside ? kImpossible : 0.0;
  if (o.kind != Observation::Kind::Position || !inside) return kImpossible;
  return (next.position - o.value).cwiseAbs().maxCoeff() <= scenario_.observation_grid ? 0.0 : kImpossible;
}

Action MazeModel::sample_random_action(Rng& rng) const {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 d;
  do {
    d = Vec3(n(rng), n(rng), scenario_.dimension == 3 ? n(rng) : 0.0);
  } while (d.norm() < 1e-9);
  return Action::move(d.normalized() * scenario_.speed);
}

RewardBreakdown MazeModel::reward_breakdown(const State& s, const Action& a, const State& next) const {
  if (s.terminal) return {};
  (void)a;
  for (const auto& d : scenario_.danger)
    if (d.contains(next.position)) return {{"danger", scenario_.danger_reward}};
  for (const auto& g : scenario_.goals)
    if (g.contains(next.position)) return {{"goal", scenario_.goal_reward}};
  return {{"step", scenario_.step_reward}};
}

bool MazeModel::is_free(const Vec3& p, double clearance) const {
  const int dims = scenario_.dimension;
  for (int i = 0; i < dims; ++i)
    if (p(i) - scenario_.arena.lo(i) < clearance || scenario_.arena.hi(i) - p(i) < clearance) return false;
  for (const auto* list : {&scenario_.walls, &scenario_.danger})
    for (const auto& b : *list)
      if (b.contains(p) || b.distance(p, dims) < clearance) return false;
  return true;
}

std::vector<Vec3> MazeModel::targets() const {
  std::vector<Vec3> out;
  for (const auto& l : scenario_.landmarks) out.push_back(l.center());
  for (const auto& g : scenario_.goals) out.push_back(g.center());
  if (scenario_.dimension == 2)
    for (auto& p : out) p.z() = 0.0;
  return out;
}

std::vector<int> MazeModel::candidate_targets(const State&) const {
  std::vector<int> out(scenario_.landmarks.size() + scenario_.goals.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
  return out;
}

std::vector<int> MazeModel::heuristic_targets(const State&) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < scenario_.goals.size(); ++i)
    out.push_back(static_cast<int>(scenario_.landmarks.size() + i));
  return out;
}

}  // namespace porpi::env
