#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace porpi {

using Vec3 = Eigen::Vector3d;
using Rng = std::mt19937_64;

/// Discretized identity used to index tree children and deduplicate actions.
using Key = std::vector<std::int64_t>;

/// State of any model in the toolkit. Continuous scenarios use `position`
/// and `visited`; tabular models use `index`.
struct State {
  Vec3 position = Vec3::Zero();
  int index = 0;
  std::uint32_t visited = 0;
  bool terminal = false;
};

/// A primitive action: a displacement vector (continuous scenarios) or an
/// index into a finite action set.
struct Action {
  Vec3 direction = Vec3::Zero();
  int index = -1;

  static Action discrete(int i) {
    Action a;
    a.index = i;
    return a;
  }
  static Action move(const Vec3& d) {
    Action a;
    a.direction = d;
    return a;
  }
  bool is_discrete() const { return index >= 0; }
};

struct Observation {
  enum class Kind : std::uint8_t { Null, Discrete, Position };

  Kind kind = Kind::Null;
  int index = -1;
  Vec3 value = Vec3::Zero();

  static Observation null() { return {}; }
  static Observation discrete(int i) {
    Observation o;
    o.kind = Kind::Discrete;
    o.index = i;
    return o;
  }
  static Observation position(const Vec3& p) {
    Observation o;
    o.kind = Kind::Position;
    o.value = p;
    return o;
  }
  bool is_null() const { return kind == Kind::Null; }
};

/// Open-loop sequence of primitive actions.
struct MacroAction {
  std::vector<Action> primitives;

  int length() const { return static_cast<int>(primitives.size()); }
  bool empty() const { return primitives.empty(); }
};

/// Observations received while executing a macro action; truncated if the
/// macro ran into a terminal state.
struct MacroObservation {
  std::vector<Observation> primitives;

  int length() const { return static_cast<int>(primitives.size()); }
};

}  // namespace porpi
