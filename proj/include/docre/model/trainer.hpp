#pragma once

#include <functional>
#include <span>
#include <vector>

#include "docre/model/network.hpp"
#include "docre/model/params.hpp"

namespace docre::model {

// Adam (beta1 0.9, beta2 0.999, eps 1e-8) over a flat view of every tensor.
template <typename Scalar>
class Adam {
 public:
  Adam(const ModelParams<Scalar>& shape, double learning_rate);
  void step(ModelParams<Scalar>& params, const ModelParams<Scalar>& grads);
  long steps() const { return t_; }

 private:
  ModelParams<Scalar> m_;
  ModelParams<Scalar> v_;
  double lr_;
  long t_ = 0;
};

struct EpochStats {
  int epoch = 0;
  double mean_loss = 0;
  int updates = 0;
  double dev_score = -1;  // -1 when no dev scorer is set
};

struct TrainHooks {
  // Dev-set score (higher is better) for early stopping and logging.
  std::function<double(const ModelParams<double>&)> dev_score;
  std::function<void(const EpochStats&)> on_epoch;
};

// One Adam step per document (the document is the batch), documents shuffled
// each epoch with a generator seeded from config.seed. Documents without
// candidates contribute no update. Throws NumericalError on a non-finite loss.
// With config.patience > 0 and a dev scorer, returns the best-scoring params.
template <typename Scalar>
ModelParams<Scalar> train(ModelParams<Scalar> params, std::span<const DocumentBatch> documents,
                          const ModelConfig& config, const TrainHooks& hooks = {});

// FNV-1a over the raw bytes of every tensor; equal checksums mean bitwise
// equal parameters.
template <typename Scalar>
std::uint64_t checksum(const ModelParams<Scalar>& params);

}  // namespace docre::model
