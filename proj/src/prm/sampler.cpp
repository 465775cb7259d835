#include "porpi/prm/sampler.hpp"

#include <cmath>

namespace porpi::prm {

MacroAction polyline_to_macro(const std::vector<Vec3>& polyline, double step, int max_length) {
  MacroAction macro;
  if (polyline.size() < 2 || max_length < 1) return macro;
  Vec3 pos = polyline.front();
  std::size_t seg = 0;
  double t_from = 0.0;
  while (macro.length() < max_length) {
    bool advanced = false;
    for (std::size_t j = seg; j + 1 < polyline.size() && !advanced; ++j) {
      const Vec3 a = polyline[j];
      const Vec3 d = polyline[j + 1] - a;
      const double dd = d.squaredNorm();
      if (dd < 1e-18) continue;
      // Exit point of the sphere |x - pos| = step along a + t d.
      const Vec3 w = a - pos;
      const double b = w.dot(d);
      const double c = w.squaredNorm() - step * step;
      const double disc = b * b - dd * c;
      if (disc < 0.0) continue;
      const double t = (-b + std::sqrt(disc)) / dd;
      const double lower = j == seg ? t_from : 0.0;
      if (t < lower || t > 1.0) continue;
      const Vec3 q = a + t * d;
      macro.primitives.push_back(Action::move(q - pos));
      pos = q;
      seg = j;
      t_from = t;
      advanced = true;
    }
    if (advanced) continue;
    const Vec3 rest = polyline.back() - pos;
    if (rest.norm() > 1e-9) macro.primitives.push_back(Action::move(rest.normalized() * step));
    break;
  }
  return macro;
}

PrmActionSampler::PrmActionSampler(std::shared_ptr<const Roadmap> roadmap,
                                   std::shared_ptr<const env::NavigationDomain> domain, int max_macro_length)
    : roadmap_(std::move(roadmap)), domain_(std::move(domain)), max_macro_length_(max_macro_length) {
  if (max_macro_length_ < 1) throw DomainError("maximum macro length must be positive");
}

const env::NavigationDomain& PrmActionSampler::domain_for(const PomdpModel& model) const {
  if (const auto* nav = dynamic_cast<const env::NavigationDomain*>(&model)) return *nav;
  return *domain_;
}

std::optional<MacroAction> PrmActionSampler::macro_toward(const State& s, int target, const PomdpModel& model) const {
  const auto& nav = domain_for(model);
  const auto path = roadmap_->path_to_target(s.position, target, nav);
  if (path.empty()) return std::nullopt;
  MacroAction m = polyline_to_macro(path, nav.speed(), max_macro_length_);
  if (m.empty()) return std::nullopt;
  return m;
}

std::optional<MacroAction> PrmActionSampler::sample(const HistoryNode&, const State& s, const PomdpModel& model,
                                                    Rng& rng) const {
  const auto candidates = domain_for(model).candidate_targets(s);
  if (candidates.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  for (int attempt = 0; attempt < 2; ++attempt)
    if (auto m = macro_toward(s, candidates[pick(rng)], model)) return m;
  return std::nullopt;
}

}  // namespace porpi::prm
