#pragma once

#include <cmath>
#include <stdexcept>

#include "docre/model/config.hpp"
#include "docre/model/tensor.hpp"

namespace docre::model {

// Row-wise log-sum-exp over the columns of `columns` (one column per mention
// tuple). The running max is subtracted before exponentiating.
template <typename Derived>
Vector<typename Derived::Scalar> logsumexp(const Eigen::MatrixBase<Derived>& columns) {
  using Scalar = typename Derived::Scalar;
  if (columns.cols() == 0) throw std::invalid_argument("logsumexp of an empty list");
  const Vector<Scalar> peak = columns.rowwise().maxCoeff();
  const Vector<Scalar> sum = (columns.colwise() - peak).array().exp().rowwise().sum();
  return peak.array() + sum.array().log();
}

template <typename Derived>
Vector<typename Derived::Scalar> max_pool(const Eigen::MatrixBase<Derived>& columns) {
  if (columns.cols() == 0) throw std::invalid_argument("max of an empty list");
  return columns.rowwise().maxCoeff();
}

template <typename Derived>
Vector<typename Derived::Scalar> aggregate(const Eigen::MatrixBase<Derived>& columns,
                                           Aggregator op) {
  return op == Aggregator::LogSumExp ? logsumexp(columns) : max_pool(columns);
}

// d(output)/d(columns) weights: softmax over columns for log-sum-exp, a
// one-hot on the first maximal column for max. Same shape as `columns`.
template <typename Derived>
Matrix<typename Derived::Scalar> aggregate_jacobian(const Eigen::MatrixBase<Derived>& columns,
                                                    const Vector<typename Derived::Scalar>& output,
                                                    Aggregator op) {
  using Scalar = typename Derived::Scalar;
  if (op == Aggregator::LogSumExp) return (columns.colwise() - output).array().exp().matrix();
  Matrix<Scalar> w = Matrix<Scalar>::Zero(columns.rows(), columns.cols());
  for (Eigen::Index r = 0; r < columns.rows(); ++r) {
    Eigen::Index best = 0;
    columns.row(r).maxCoeff(&best);
    w(r, best) = Scalar(1);
  }
  return w;
}

}  // namespace docre::model
