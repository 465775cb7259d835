#pragma once

#include <cmath>
#include <limits>

#include <Eigen/Core>

namespace porpi {

/// Log-sum-exp operator (1/eta) log sum_i exp(eta x_i), shifted by the max.
template <typename Derived>
typename Derived::Scalar log_sum_exp(const Eigen::DenseBase<Derived>& x,
                                     typename Derived::Scalar eta) {
  using Scalar = typename Derived::Scalar;
  if (x.size() == 0) return -std::numeric_limits<Scalar>::infinity();
  const Scalar m = x.maxCoeff();
  const Scalar sum = (eta * (x.derived().array() - m)).exp().sum();
  return m + std::log(sum) / eta;
}

/// exp(eta x) / sum exp(eta x), shifted by the max.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> softmax(
    const Eigen::DenseBase<Derived>& x, typename Derived::Scalar eta) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w = (eta * (x.derived().array() - x.maxCoeff())).exp().matrix();
  return w / w.sum();
}

/// Row-wise softmax of a (belief x action) table.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> softmax_rows(
    const Eigen::MatrixBase<Derived>& table, typename Derived::Scalar eta) {
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(table.rows(), table.cols());
  for (Eigen::Index r = 0; r < table.rows(); ++r) out.row(r) = softmax(table.row(r).transpose(), eta).transpose();
  return out;
}

/// Row-wise log-sum-exp of a (belief x action) table.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> log_sum_exp_rows(
    const Eigen::MatrixBase<Derived>& table, typename Derived::Scalar eta) {
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> out(table.rows());
  for (Eigen::Index r = 0; r < table.rows(); ++r) out(r) = log_sum_exp(table.row(r), eta);
  return out;
}

}  // namespace porpi
