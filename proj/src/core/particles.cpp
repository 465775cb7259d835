#include "porpi/core/particles.hpp"

#include <cassert>
#include <cmath>

#include "porpi/core/errors.hpp"

namespace porpi {

BeliefParticleSet::BeliefParticleSet(std::size_t capacity, std::uint64_t seed_tag)
    : capacity_(capacity == 0 ? 1 : capacity), seed_tag_(seed_tag) {}

void BeliefParticleSet::insert(const State& s, Rng& rng) {
  if (particles_.size() < capacity_) {
    particles_.push_back(s);
    return;
  }
  std::uniform_int_distribution<std::size_t> pick(0, particles_.size() - 1);
  particles_[pick(rng)] = s;
}

void BeliefParticleSet::push_back(const State& s) {
  if (particles_.size() < capacity_) particles_.push_back(s);
}

const State& BeliefParticleSet::sample(Rng& rng) const {
  if (particles_.empty()) throw ModelContractError("sampling from an empty particle set");
  std::uniform_int_distribution<std::size_t> pick(0, particles_.size() - 1);
  return particles_[pick(rng)];
}

Vec3 BeliefParticleSet::mean_position() const {
  Vec3 m = Vec3::Zero();
  if (particles_.empty()) return m;
  for (const auto& p : particles_) m += p.position;
  return m / static_cast<double>(particles_.size());
}

double BeliefParticleSet::position_spread() const {
  if (particles_.size() < 2) return 0.0;
  const Vec3 m = mean_position();
  double ss = 0.0;
  for (const auto& p : particles_) ss += (p.position - m).squaredNorm();
  return std::sqrt(ss / static_cast<double>(particles_.size()));
}

}  // namespace porpi
