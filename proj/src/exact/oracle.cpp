#include "porpi/exact/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace porpi::exact {

namespace {

void enumerate_cumulative(int n, int m, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  const auto i = current.size();
  if (static_cast<int>(i) == n) {
    out.push_back(current);
    return;
  }
  const int upper = i == 0 ? m : current.back();
  const int lower = i == 0 ? m : 0;
  for (int x = upper; x >= lower; --x) {
    current.push_back(x);
    enumerate_cumulative(n, m, current, out);
    current.pop_back();
  }
}

Belief to_belief(const std::vector<int>& x, int m) {
  const auto n = static_cast<Eigen::Index>(x.size());
  Belief b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int next = i + 1 < n ? x[static_cast<std::size_t>(i + 1)] : 0;
    b(i) = static_cast<double>(x[static_cast<std::size_t>(i)] - next) / m;
  }
  return b;
}

}  // namespace

int default_grid_resolution(int states) {
  if (states <= 2) return 100;
  if (states == 3) return 20;
  if (states == 4) return 10;
  throw DomainError("grid oracle supports at most four states");
}

BeliefGridOracle::BeliefGridOracle(const TabularPomdp& model, int resolution, double tolerance)
    : model_(model), resolution_(resolution) {
  if (resolution < 1) throw DomainError("grid resolution must be positive");
  std::vector<int> scratch;
  enumerate_cumulative(model.state_count(), resolution, scratch, grid_);
  beliefs_.reserve(grid_.size());
  for (const auto& x : grid_) beliefs_.push_back(to_belief(x, resolution));

  struct Backup {
    double reward;
    std::vector<int> vertices;
    std::vector<double> weights;
  };
  const int A = model.action_count();
  const double gamma = model.discount();
  std::vector<Backup> backups(grid_.size() * static_cast<std::size_t>(A));
  for (std::size_t g = 0; g < grid_.size(); ++g) {
    for (int a = 0; a < A; ++a) {
      Backup& bk = backups[g * static_cast<std::size_t>(A) + static_cast<std::size_t>(a)];
      bk.reward = model.expected_reward(beliefs_[g], a);
      const Eigen::VectorXd p = model.observation_probabilities(beliefs_[g], a);
      for (int o = 0; o < model.observation_count(); ++o) {
        if (!(p(o) > 0.0)) continue;
        const Stencil st = interpolate(model.update(beliefs_[g], a, o));
        for (std::size_t j = 0; j < st.vertices.size(); ++j) {
          bk.vertices.push_back(st.vertices[j]);
          bk.weights.push_back(gamma * p(o) * st.weights[j]);
        }
      }
    }
  }

  values_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid_.size()));
  Eigen::VectorXd next(values_.size());
  for (iterations_ = 1; iterations_ <= 1'000'000; ++iterations_) {
    for (std::size_t g = 0; g < grid_.size(); ++g) {
      double best = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < A; ++a) {
        const Backup& bk = backups[g * static_cast<std::size_t>(A) + static_cast<std::size_t>(a)];
        double q = bk.reward;
        for (std::size_t j = 0; j < bk.vertices.size(); ++j) q += bk.weights[j] * values_(bk.vertices[j]);
        best = std::max(best, q);
      }
      next(static_cast<Eigen::Index>(g)) = best;
    }
    const double residual = (next - values_).cwiseAbs().maxCoeff();
    values_.swap(next);
    if (residual <= tolerance) return;
  }
  throw NumericError("grid value iteration did not converge");
}

int BeliefGridOracle::index_of(const std::vector<int>& cumulative) const {
  // Grid points are generated in lexicographically decreasing order.
  auto it = std::lower_bound(grid_.begin(), grid_.end(), cumulative,
                             [](const std::vector<int>& a, const std::vector<int>& b) { return a > b; });
  if (it == grid_.end() || *it != cumulative) throw NumericError("interpolation vertex outside the grid");
  return static_cast<int>(it - grid_.begin());
}

BeliefGridOracle::Stencil BeliefGridOracle::interpolate(const Belief& b) const {
  const int n = model_.state_count();
  const int m = resolution_;
  if (b.size() != n) throw DomainError("belief has wrong size");
  std::vector<double> x(static_cast<std::size_t>(n));
  double tail = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    tail += std::max(0.0, b(i));
    x[static_cast<std::size_t>(i)] = std::clamp(m * tail, 0.0, static_cast<double>(m));
  }
  x[0] = m;
  std::vector<int> base(static_cast<std::size_t>(n));
  std::vector<double> frac(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < base.size(); ++i) {
    base[i] = std::min(m, static_cast<int>(std::floor(x[i])));
    frac[i] = x[i] - base[i];
  }
  frac[0] = 0.0;
  std::vector<int> order(static_cast<std::size_t>(n - 1));
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](int l, int r) {
    return frac[static_cast<std::size_t>(l)] > frac[static_cast<std::size_t>(r)];
  });

  Stencil st;
  std::vector<int> vertex = base;
  double prev = 1.0;
  for (std::size_t k = 0; k <= order.size(); ++k) {
    const double d = k < order.size() ? frac[static_cast<std::size_t>(order[k])] : 0.0;
    const double w = prev - d;
    if (w > 1e-15) {
      st.vertices.push_back(index_of(vertex));
      st.weights.push_back(w);
    }
    if (k < order.size()) ++vertex[static_cast<std::size_t>(order[k])];
    prev = d;
  }
  return st;
}

double BeliefGridOracle::value(const Belief& b) const {
  const Stencil st = interpolate(b);
  double v = 0.0;
  for (std::size_t j = 0; j < st.vertices.size(); ++j) v += st.weights[j] * values_(st.vertices[j]);
  return v;
}

double BeliefGridOracle::q_value(const Belief& b, int a) const {
  double q = model_.expected_reward(b, a);
  const Eigen::VectorXd p = model_.observation_probabilities(b, a);
  for (int o = 0; o < model_.observation_count(); ++o)
    if (p(o) > 0.0) q += model_.discount() * p(o) * value(model_.update(b, a, o));
  return q;
}

Eigen::MatrixXd BeliefGridOracle::q_table(const std::vector<Belief>& beliefs) const {
  Eigen::MatrixXd q(static_cast<Eigen::Index>(beliefs.size()), model_.action_count());
  for (std::size_t i = 0; i < beliefs.size(); ++i)
    for (int a = 0; a < model_.action_count(); ++a) q(static_cast<Eigen::Index>(i), a) = q_value(beliefs[i], a);
  return q;
}

Eigen::MatrixXd oracle_qstar(const TabularPomdp& model, int resolution, const std::vector<Belief>& at) {
  return BeliefGridOracle(model, resolution).q_table(at);
}

}  // namespace porpi::exact
