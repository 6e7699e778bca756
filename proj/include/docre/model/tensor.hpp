#pragma once

#include <Eigen/Dense>

namespace docre::model {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
Scalar sigmoid(Scalar x) {
  return x >= Scalar(0) ? Scalar(1) / (Scalar(1) + std::exp(-x))
                        : std::exp(x) / (Scalar(1) + std::exp(x));
}

}  // namespace docre::model
