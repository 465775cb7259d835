#pragma once

#include <vector>

#include "porpi/exact/tabular_pomdp.hpp"

namespace porpi::exact {

/// Well-ordered (by index) finite set of reachable beliefs under d1.
struct CoveringSet {
  std::vector<Belief> beliefs;
  double radius = 0.0;

  std::size_t size() const { return beliefs.size(); }
};

/// Greedy packing over the input order: b is kept iff d1(b, kept) > delta for
/// every kept member. The result is a delta-packing and an internal
/// delta-covering of `beliefs`.
CoveringSet build_internal_covering(const std::vector<Belief>& beliefs, double delta);

/// Lowest index among the d1-nearest members.
int nearest_member(const CoveringSet& cover, const Belief& b);

/// phi(b, a, o): nearest member to tau(b, a, o). DomainError when the
/// observation has zero probability.
int nearest_belief(const CoveringSet& cover, const Belief& b, int a, int o, const TabularPomdp& model);

/// max over points of the distance to the nearest member.
double covering_radius(const CoveringSet& cover, const std::vector<Belief>& points);

/// Smallest pairwise d1 distance between members (infinity for < 2 members).
double packing_separation(const CoveringSet& cover);

}  // namespace porpi::exact
