#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "docre/model/config.hpp"
#include "docre/model/lstm.hpp"
#include "docre/model/tensor.hpp"

namespace docre::model {

// Per-subrelation parameters: the mention projection and the learned
// stand-in used when the subset never co-occurs in a discourse unit.
template <typename Scalar>
struct SubrelationHead {
  Matrix<Scalar> weight;    // d_mention x |S| * 2H
  Vector<Scalar> bias;      // d_mention
  Vector<Scalar> fallback;  // d_mention
};

template <typename Scalar>
struct ModelParams {
  Matrix<Scalar> word_vectors;  // d_word x vocab
  LstmWeights<Scalar> forward;
  LstmWeights<Scalar> backward;
  std::vector<SubrelationHead<Scalar>> heads;  // RelationSchema::subsets() order
  Matrix<Scalar> hidden_weight;  // ffn_hidden x (#subsets * d_mention)
  Vector<Scalar> hidden_bias;
  Matrix<Scalar> output_weight;  // num_classes x ffn_hidden
  Vector<Scalar> output_bias;

  // Calls fn(name, tensor) for every tensor in a fixed order; tensors are
  // Matrix or Vector lvalues.
  template <typename Fn>
  void visit(Fn&& fn) {
    visit_impl(*this, fn);
  }
  template <typename Fn>
  void visit(Fn&& fn) const {
    visit_impl(*this, fn);
  }

  std::size_t parameter_count() const;
  bool all_finite() const;
  void set_zero();

  // Same shapes, all zeros.
  ModelParams zeros_like() const;

  template <typename Other>
  ModelParams<Other> cast() const;

  // Seeded init: word vectors U(-e, e) (e = config.embedding_init), LSTM
  // weights U(-1/sqrt(H), 1/sqrt(H)) with forget bias 1, linear layers Glorot
  // uniform, subrelation fallbacks U(-0.1, 0.1).
  static ModelParams init(const ModelConfig& config, int vocab_size, int arity,
                          std::uint64_t seed);

 private:
  template <typename Self, typename Fn>
  static void visit_impl(Self& self, Fn& fn) {
    fn("word_vectors", self.word_vectors);
    fn("lstm_forward.input", self.forward.input);
    fn("lstm_forward.recurrent", self.forward.recurrent);
    fn("lstm_forward.bias", self.forward.bias);
    fn("lstm_backward.input", self.backward.input);
    fn("lstm_backward.recurrent", self.backward.recurrent);
    fn("lstm_backward.bias", self.backward.bias);
    for (std::size_t s = 0; s < self.heads.size(); ++s) {
      const std::string prefix = "subrelation" + std::to_string(s) + ".";
      fn(prefix + "weight", self.heads[s].weight);
      fn(prefix + "bias", self.heads[s].bias);
      fn(prefix + "fallback", self.heads[s].fallback);
    }
    fn("ffn.hidden_weight", self.hidden_weight);
    fn("ffn.hidden_bias", self.hidden_bias);
    fn("ffn.output_weight", self.output_weight);
    fn("ffn.output_bias", self.output_bias);
  }
};

// Number of subsets of size >= 2 of an n-element set.
int subset_count(int arity);

}  // namespace docre::model
