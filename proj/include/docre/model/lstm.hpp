#pragma once

#include "docre/model/tensor.hpp"

namespace docre::model {

// Gate rows are stacked [input; forget; output; candidate].
template <typename Scalar>
struct LstmWeights {
  Matrix<Scalar> input;      // 4H x D
  Matrix<Scalar> recurrent;  // 4H x H
  Vector<Scalar> bias;       // 4H

  int hidden() const { return static_cast<int>(recurrent.cols()); }
};

// Activations kept for backpropagation, indexed by time step in reading order.
template <typename Scalar>
struct LstmTrace {
  Matrix<Scalar> gates;   // 4H x T, post-activation
  Matrix<Scalar> cells;   // H x T
  Matrix<Scalar> hidden;  // H x T
};

// Runs one direction over the columns of `inputs`. With `reverse`, reading
// order is right to left but outputs stay indexed by original position.
template <typename Scalar>
LstmTrace<Scalar> lstm_forward(const LstmWeights<Scalar>& w, const Matrix<Scalar>& inputs,
                               bool reverse) {
  const int H = w.hidden();
  const auto T = inputs.cols();
  LstmTrace<Scalar> trace{Matrix<Scalar>(4 * H, T), Matrix<Scalar>(H, T), Matrix<Scalar>(H, T)};
  const Matrix<Scalar> projected = (w.input * inputs).colwise() + w.bias;
  Vector<Scalar> h = Vector<Scalar>::Zero(H);
  Vector<Scalar> c = Vector<Scalar>::Zero(H);
  for (Eigen::Index step = 0; step < T; ++step) {
    const auto t = reverse ? T - 1 - step : step;
    Vector<Scalar> z = projected.col(t) + w.recurrent * h;
    auto g = trace.gates.col(t);
    for (int k = 0; k < 3 * H; ++k) g(k) = sigmoid(z(k));
    g.tail(H) = z.tail(H).array().tanh();
    c = g.segment(H, H).cwiseProduct(c) + g.head(H).cwiseProduct(g.tail(H));
    h = g.segment(2 * H, H).cwiseProduct(c.array().tanh().matrix());
    trace.cells.col(t) = c;
    trace.hidden.col(t) = h;
  }
  return trace;
}

// Accumulates weight gradients into `grads` and returns d(loss)/d(inputs).
template <typename Scalar>
Matrix<Scalar> lstm_backward(const LstmWeights<Scalar>& w, const Matrix<Scalar>& inputs,
                             const LstmTrace<Scalar>& trace, const Matrix<Scalar>& d_hidden,
                             bool reverse, LstmWeights<Scalar>& grads) {
  const int H = w.hidden();
  const auto T = inputs.cols();
  Matrix<Scalar> d_pre(4 * H, T);
  Vector<Scalar> dh_next = Vector<Scalar>::Zero(H);
  Vector<Scalar> dc_next = Vector<Scalar>::Zero(H);
  for (Eigen::Index step = T - 1; step >= 0; --step) {
    const auto t = reverse ? T - 1 - step : step;
    const bool first = step == 0;
    const auto prev = reverse ? t + 1 : t - 1;
    const auto g = trace.gates.col(t);
    const auto i = g.head(H).array();
    const auto f = g.segment(H, H).array();
    const auto o = g.segment(2 * H, H).array();
    const auto cand = g.tail(H).array();
    const Vector<Scalar> tanh_c = trace.cells.col(t).array().tanh();
    const Vector<Scalar> c_prev = first ? Vector<Scalar>::Zero(H) : Vector<Scalar>(trace.cells.col(prev));

    const Vector<Scalar> dh = d_hidden.col(t) + dh_next;
    const Vector<Scalar> dc =
        dc_next.array() + dh.array() * o * (Scalar(1) - tanh_c.array().square());
    auto dz = d_pre.col(t);
    dz.head(H) = dc.array() * cand * i * (Scalar(1) - i);
    dz.segment(H, H) = dc.array() * c_prev.array() * f * (Scalar(1) - f);
    dz.segment(2 * H, H) = dh.array() * tanh_c.array() * o * (Scalar(1) - o);
    dz.tail(H) = dc.array() * i * (Scalar(1) - cand.square());

    dc_next = dc.array() * f;
    dh_next = w.recurrent.transpose() * dz;
    if (!first) grads.recurrent.noalias() += dz * trace.hidden.col(prev).transpose();
  }
  grads.input.noalias() += d_pre * inputs.transpose();
  grads.bias += d_pre.rowwise().sum();
  return w.input.transpose() * d_pre;
}

}  // namespace docre::model
