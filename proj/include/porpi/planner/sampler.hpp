#pragma once

#include <optional>
#include <vector>

#include "porpi/core/model.hpp"

namespace porpi {

struct HistoryNode;

/// Proposes candidate macro actions for a history given one state particle.
class ActionSampler {
 public:
  virtual ~ActionSampler() = default;
  /// nullopt when no candidate could be produced (e.g. no path found).
  virtual std::optional<MacroAction> sample(const HistoryNode& h, const State& s,
                                            const PomdpModel& model, Rng& rng) const = 0;
};

/// Leaf value estimate used once the depth bound is exceeded.
class ValueHeuristic {
 public:
  virtual ~ValueHeuristic() = default;
  virtual double value(const HistoryNode& h, const State& s, const PomdpModel& model) const = 0;
};

class ZeroHeuristic final : public ValueHeuristic {
 public:
  double value(const HistoryNode&, const State&, const PomdpModel&) const override { return 0.0; }
};

/// Uniform draw from a fixed list of macros. With discrete models this is the
/// natural sampler: one length-1 macro per action.
class UniformMacroSampler final : public ActionSampler {
 public:
  explicit UniformMacroSampler(std::vector<MacroAction> macros);
  static UniformMacroSampler discrete_actions(int action_count);

  std::optional<MacroAction> sample(const HistoryNode& h, const State& s, const PomdpModel& model,
                                    Rng& rng) const override;
  const std::vector<MacroAction>& macros() const { return macros_; }

 private:
  std::vector<MacroAction> macros_;
};

}  // namespace porpi
