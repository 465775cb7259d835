#pragma once

#include <cstdint>
#include <vector>

#include "porpi/core/types.hpp"

namespace porpi {

/// Unweighted particle belief. Sampling is uniform over stored particles;
/// once `capacity` is reached insertions overwrite a uniformly chosen slot.
class BeliefParticleSet {
 public:
  explicit BeliefParticleSet(std::size_t capacity = 4096, std::uint64_t seed_tag = 0);

  void insert(const State& s, Rng& rng);
  void push_back(const State& s);
  const State& sample(Rng& rng) const;

  bool empty() const { return particles_.empty(); }
  std::size_t size() const { return particles_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::uint64_t seed_tag() const { return seed_tag_; }
  void set_seed_tag(std::uint64_t t) { seed_tag_ = t; }

  const std::vector<State>& particles() const { return particles_; }
  auto begin() const { return particles_.begin(); }
  auto end() const { return particles_.end(); }

  Vec3 mean_position() const;
  double position_spread() const;

 private:
  std::vector<State> particles_;
  std::size_t capacity_;
  std::uint64_t seed_tag_;
};

}  // namespace porpi
