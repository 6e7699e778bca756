#include "docre/model/params.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace docre::model {

int subset_count(int arity) { return (1 << arity) - arity - 1; }

namespace {

template <typename Scalar, typename Derived>
void fill_uniform(Eigen::MatrixBase<Derived>& m, double half_width, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-half_width, half_width);
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = Scalar(dist(rng));
}

template <typename Scalar>
Matrix<Scalar> glorot(int rows, int cols, std::mt19937_64& rng) {
  Matrix<Scalar> m(rows, cols);
  fill_uniform<Scalar>(m, std::sqrt(6.0 / (rows + cols)), rng);
  return m;
}

template <typename Scalar>
LstmWeights<Scalar> init_lstm(int d_in, int hidden, std::mt19937_64& rng) {
  const double k = 1.0 / std::sqrt(double(hidden));
  LstmWeights<Scalar> w{Matrix<Scalar>(4 * hidden, d_in), Matrix<Scalar>(4 * hidden, hidden),
                        Vector<Scalar>(4 * hidden)};
  fill_uniform<Scalar>(w.input, k, rng);
  fill_uniform<Scalar>(w.recurrent, k, rng);
  fill_uniform<Scalar>(w.bias, k, rng);
  w.bias.segment(hidden, hidden).setConstant(Scalar(1));
  return w;
}

}  // namespace

template <typename Scalar>
std::size_t ModelParams<Scalar>::parameter_count() const {
  std::size_t n = 0;
  visit([&](const std::string&, const auto& t) { n += static_cast<std::size_t>(t.size()); });
  return n;
}

template <typename Scalar>
bool ModelParams<Scalar>::all_finite() const {
  bool ok = true;
  visit([&](const std::string&, const auto& t) { ok = ok && t.allFinite(); });
  return ok;
}

template <typename Scalar>
void ModelParams<Scalar>::set_zero() {
  visit([](const std::string&, auto& t) { t.setZero(); });
}

template <typename Scalar>
ModelParams<Scalar> ModelParams<Scalar>::zeros_like() const {
  ModelParams out = *this;
  out.set_zero();
  return out;
}

template <typename Scalar>
template <typename Other>
ModelParams<Other> ModelParams<Scalar>::cast() const {
  ModelParams<Other> out;
  out.word_vectors = word_vectors.template cast<Other>();
  auto cast_lstm = [](const LstmWeights<Scalar>& w) {
    return LstmWeights<Other>{w.input.template cast<Other>(), w.recurrent.template cast<Other>(),
                              w.bias.template cast<Other>()};
  };
  out.forward = cast_lstm(forward);
  out.backward = cast_lstm(backward);
  for (const auto& h : heads)
    out.heads.push_back({h.weight.template cast<Other>(), h.bias.template cast<Other>(),
                         h.fallback.template cast<Other>()});
  out.hidden_weight = hidden_weight.template cast<Other>();
  out.hidden_bias = hidden_bias.template cast<Other>();
  out.output_weight = output_weight.template cast<Other>();
  out.output_bias = output_bias.template cast<Other>();
  return out;
}

template <typename Scalar>
ModelParams<Scalar> ModelParams<Scalar>::init(const ModelConfig& config, int vocab_size,
                                              int arity, std::uint64_t seed) {
  config.validate();
  std::mt19937_64 rng(seed);
  ModelParams p;
  p.word_vectors.resize(config.d_word, vocab_size);
  fill_uniform<Scalar>(p.word_vectors, config.embedding_init, rng);
  p.forward = init_lstm<Scalar>(config.d_input(), config.lstm_hidden, rng);
  p.backward = init_lstm<Scalar>(config.d_input(), config.lstm_hidden, rng);

  for (int mask = 0; mask < (1 << arity); ++mask) {
    const int size = std::popcount(static_cast<unsigned>(mask));
    if (size < 2) continue;
    SubrelationHead<Scalar> head;
    head.weight = glorot<Scalar>(config.d_mention, size * config.d_hidden(), rng);
    head.bias = Vector<Scalar>::Zero(config.d_mention);
    head.fallback.resize(config.d_mention);
    fill_uniform<Scalar>(head.fallback, 0.1, rng);
    p.heads.push_back(std::move(head));
  }
  // Heads were created in mask order; RelationSchema::subsets() orders by size
  // first, so re-sort by input width (stable within a size).
  std::stable_sort(p.heads.begin(), p.heads.end(), [](const auto& a, const auto& b) {
    return a.weight.cols() < b.weight.cols();
  });

  const int concat = subset_count(arity) * config.d_mention;
  p.hidden_weight = glorot<Scalar>(config.ffn_hidden, concat, rng);
  p.hidden_bias = Vector<Scalar>::Zero(config.ffn_hidden);
  p.output_weight = glorot<Scalar>(config.num_classes, config.ffn_hidden, rng);
  p.output_bias = Vector<Scalar>::Zero(config.num_classes);
  return p;
}

template struct ModelParams<float>;
template struct ModelParams<double>;
template ModelParams<double> ModelParams<float>::cast<double>() const;
template ModelParams<float> ModelParams<double>::cast<float>() const;
template ModelParams<double> ModelParams<double>::cast<double>() const;
template ModelParams<float> ModelParams<float>::cast<float>() const;

}  // namespace docre::model
