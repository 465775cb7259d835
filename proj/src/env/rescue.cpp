#include "porpi/env/rescue.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace porpi::env {

namespace {

const std::vector<Box> kNoZones;

std::uint32_t all_objectives(std::size_t n) { return n >= 32 ? ~0u : (1u << n) - 1u; }

}  // namespace

void RescueScenario::validate() const {
  if (!bounds.valid()) throw DomainError("bounds box is inverted");
  if (!(speed > 0.0)) throw DomainError("speed must be positive");
  if (!(transition_noise >= 0.0) || !(observation_noise > 0.0)) throw DomainError("noise scales must be positive");
  if (!(discount > 0.0 && discount < 1.0)) throw DomainError("discount must lie in (0, 1)");
  if (!(observation_grid > 0.0)) throw DomainError("observation grid must be positive");
  if (objectives.empty() || objectives.size() > 31) throw DomainError("between 1 and 31 objectives required");
  for (const auto& o : objectives)
    if (!(o.radius > 0.0)) throw DomainError("objective radius must be positive");
  if (!bounds.contains(start)) throw DomainError("start outside the bounds");
  if (start.z() <= terrain.height(start.x(), start.y())) throw DomainError("start below the terrain");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i].step < 0) throw DomainError("schedule steps must be non-negative");
    if (i > 0 && schedule[i].step <= schedule[i - 1].step) throw DomainError("schedule steps must increase strictly");
    for (const auto& z : schedule[i].zones)
      if (!z.valid()) throw DomainError("inverted no-fly zone");
  }
}

const std::vector<Box>& RescueScenario::active_zones(int step) const {
  const std::vector<Box>* active = &kNoZones;
  for (const auto& e : schedule) {
    if (e.step > step) break;
    active = &e.zones;
  }
  return *active;
}

RescueModel::RescueModel(std::shared_ptr<const RescueScenario> scenario, int step)
    : scenario_(std::move(scenario)), step_(step) {
  scenario_->validate();
  active_ = &scenario_->active_zones(step_);
}

bool RescueModel::in_active_nfz(const Vec3& p) const {
  return std::any_of(active_->begin(), active_->end(), [&](const Box& z) { return z.contains(p); });
}

double RescueModel::reward_bound() const {
  const auto& sc = *scenario_;
  const double best = std::abs(sc.step_reward) + std::abs(sc.nfz_reward) +
                      std::abs(sc.objective_reward) * static_cast<double>(sc.objectives.size()) +
                      std::abs(sc.completion_reward);
  return std::max(best, std::abs(sc.collision_reward));
}

State RescueModel::sample_initial(Rng&) const {
  State s;
  s.position = scenario_->start;
  return s;
}

void RescueModel::validate(const State& s, const Action& a) const {
  if (a.is_discrete()) throw ModelContractError("rescue actions are direction vectors");
  if (!a.direction.allFinite() || !s.position.allFinite()) throw ModelContractError("non-finite state or action");
}

Transition RescueModel::settle(const State& s, const Vec3& raw) const {
  const auto& sc = *scenario_;
  Transition t;
  t.next = s;
  t.next.position = raw.cwiseMax(sc.bounds.lo).cwiseMin(sc.bounds.hi);
  const Vec3& p = t.next.position;
  if (p.z() <= sc.terrain.height(p.x(), p.y())) {
    t.next.terminal = true;
    t.reward = sc.collision_reward;
    return t;
  }
  t.reward = sc.step_reward;
  if (in_active_nfz(p)) t.reward += sc.nfz_reward;
  for (std::size_t i = 0; i < sc.objectives.size(); ++i) {
    const std::uint32_t bit = 1u << i;
    if ((t.next.visited & bit) == 0 && sc.objectives[i].contains(p)) {
      t.next.visited |= bit;
      t.reward += sc.objective_reward;
    }
  }
  if (t.next.visited == all_objectives(sc.objectives.size())) {
    t.next.terminal = true;
    t.reward += sc.completion_reward;
  }
  return t;
}

Transition RescueModel::transition(const State& s, const Action& a, Rng& rng) const {
  validate(s, a);
  std::normal_distribution<double> noise(0.0, std::sqrt(scenario_->transition_noise * scenario_->speed));
  const Vec3 d = a.direction + Vec3(noise(rng), noise(rng), noise(rng));
  return settle(s, s.position + d);
}

Transition RescueModel::transition_noiseless(const State& s, const Action& a) const {
  validate(s, a);
  return settle(s, s.position + a.direction);
}

Observation RescueModel::observe(const State& next, const Action&, Rng& rng) const {
  std::normal_distribution<double> noise(0.0, std::sqrt(scenario_->observation_noise));
  return Observation::position(next.position + Vec3(noise(rng), noise(rng), noise(rng)));
}

double RescueModel::observation_log_likelihood(const State& next, const Action&, const Observation& o) const {
  if (o.kind != Observation::Kind::Position) return -std::numeric_limits<double>::infinity();
  const double var = scenario_->observation_noise;
  return -(o.value - next.position).squaredNorm() / (2.0 * var) - 1.5 * std::log(2.0 * std::numbers::pi * var);
}

Action RescueModel::sample_random_action(Rng& rng) const {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 d;
  do {
    d = Vec3(n(rng), n(rng), n(rng));
  } while (d.norm() < 1e-9);
  return Action::move(d.normalized() * scenario_->speed);
}

Key RescueModel::macro_observation_key(const MacroObservation& mo) const {
  Key key{mo.length()};
  if (mo.length() > 0) {
    const Key last = observation_key(mo.primitives.back());
    key.insert(key.end(), last.begin(), last.end());
  }
  return key;
}

bool RescueModel::is_success(const State& s) const {
  return s.visited == all_objectives(scenario_->objectives.size());
}

RewardBreakdown RescueModel::reward_breakdown(const State& s, const Action&, const State& next) const {
  if (s.terminal) return {};
  const auto& sc = *scenario_;
  const Vec3& p = next.position;
  if (p.z() <= sc.terrain.height(p.x(), p.y())) return {{"collision", sc.collision_reward}};
  RewardBreakdown out{{"step", sc.step_reward}};
  if (in_active_nfz(p)) out["nfz"] = sc.nfz_reward;
  const std::uint32_t fresh = next.visited & ~s.visited;
  for (std::size_t i = 0; i < sc.objectives.size(); ++i)
    if (fresh & (1u << i)) out["objective"] += sc.objective_reward;
  if (next.visited == all_objectives(sc.objectives.size()) && s.visited != next.visited)
    out["completion"] = sc.completion_reward;
  return out;
}

std::shared_ptr<const PomdpModel> RescueModel::at_step(int step) const {
  return std::make_shared<RescueModel>(scenario_, step);
}

bool RescueModel::is_free(const Vec3& p, double clearance) const {
  const auto& sc = *scenario_;
  for (int i = 0; i < 3; ++i)
    if (p(i) - sc.bounds.lo(i) < clearance || sc.bounds.hi(i) - p(i) < clearance) return false;
  return p.z() - sc.terrain.height(p.x(), p.y()) >= std::max(clearance, sc.terrain_clearance);
}

std::vector<Vec3> RescueModel::targets() const {
  std::vector<Vec3> out;
  for (const auto& o : scenario_->objectives) out.push_back(o.center);
  return out;
}

std::vector<int> RescueModel::candidate_targets(const State& s) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < scenario_->objectives.size(); ++i)
    if ((s.visited & (1u << i)) == 0) out.push_back(static_cast<int>(i));
  if (out.empty())
    for (std::size_t i = 0; i < scenario_->objectives.size(); ++i) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> RescueModel::heuristic_targets(const State& s) const { return candidate_targets(s); }

}  // namespace porpi::env
