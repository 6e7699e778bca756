#pragma once

#include <cmath>
#include <span>

#include "docre/model/tensor.hpp"

namespace docre::model {

// Interleaved sinusoidal position code: [2i] = sin(pos * w_i),
// [2i+1] = cos(pos * w_i), with w_i = 10000^(-2i/dim).
template <typename Scalar>
Vector<Scalar> sinusoid(int position, int dim) {
  Vector<Scalar> out(dim);
  for (int i = 0; 2 * i < dim; ++i) {
    const double freq = std::pow(10000.0, -2.0 * i / dim);
    out(2 * i) = Scalar(std::sin(position * freq));
    if (2 * i + 1 < dim) out(2 * i + 1) = Scalar(std::cos(position * freq));
  }
  return out;
}

// Input matrix for one discourse unit, one column per token:
// [word vector; sinusoid(unit_index)].
template <typename Scalar>
Matrix<Scalar> embed(const Matrix<Scalar>& word_vectors, std::span<const int> token_ids,
                     int unit_index, int d_unit_index) {
  const auto d_word = word_vectors.rows();
  Matrix<Scalar> out(d_word + d_unit_index, static_cast<Eigen::Index>(token_ids.size()));
  const Vector<Scalar> position = sinusoid<Scalar>(unit_index, d_unit_index);
  for (std::size_t t = 0; t < token_ids.size(); ++t) {
    out.col(t).head(d_word) = word_vectors.col(token_ids[t]);
    out.col(t).tail(d_unit_index) = position;
  }
  return out;
}

}  // namespace docre::model
