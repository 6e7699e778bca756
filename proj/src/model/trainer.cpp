#include "docre/model/trainer.hpp"

#include <cmath>
#include <cstring>
#include <algorithm>
#include <numeric>
#include <random>

#include "docre/errors.hpp"

namespace docre::model {

namespace {

template <typename Scalar>
std::vector<Eigen::Map<Vector<Scalar>>> flat_views(ModelParams<Scalar>& p) {
  std::vector<Eigen::Map<Vector<Scalar>>> out;
  p.visit([&](const std::string&, auto& t) { out.emplace_back(t.data(), t.size()); });
  return out;
}

template <typename Scalar>
std::vector<Eigen::Map<const Vector<Scalar>>> flat_views(const ModelParams<Scalar>& p) {
  std::vector<Eigen::Map<const Vector<Scalar>>> out;
  p.visit([&](const std::string&, const auto& t) { out.emplace_back(t.data(), t.size()); });
  return out;
}

}  // namespace

template <typename Scalar>
Adam<Scalar>::Adam(const ModelParams<Scalar>& shape, double learning_rate)
    : m_(shape.zeros_like()), v_(shape.zeros_like()), lr_(learning_rate) {}

template <typename Scalar>
void Adam<Scalar>::step(ModelParams<Scalar>& params, const ModelParams<Scalar>& grads) {
  constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  ++t_;
  const double c1 = 1.0 - std::pow(beta1, double(t_));
  const double c2 = 1.0 - std::pow(beta2, double(t_));
  auto p = flat_views(params);
  auto g = flat_views(grads);
  auto m = flat_views(m_);
  auto v = flat_views(v_);
  for (std::size_t k = 0; k < p.size(); ++k) {
    m[k] = Scalar(beta1) * m[k] + Scalar(1 - beta1) * g[k];
    v[k] = Scalar(beta2) * v[k] + Scalar(1 - beta2) * g[k].cwiseProduct(g[k]);
    p[k].array() -= Scalar(lr_) * (m[k].array() / Scalar(c1)) /
                    ((v[k].array() / Scalar(c2)).sqrt() + Scalar(eps));
  }
}

template <typename Scalar>
ModelParams<Scalar> train(ModelParams<Scalar> params, std::span<const DocumentBatch> documents,
                          const ModelConfig& config, const TrainHooks& hooks) {
  config.validate();
  Adam<Scalar> optimizer(params, config.learning_rate);
  ModelParams<Scalar> grads = params.zeros_like();
  std::vector<std::size_t> order(documents.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(config.seed ^ 0x5eed5eedULL);

  const bool early_stopping = config.patience > 0 && hooks.dev_score;
  ModelParams<Scalar> best = params;
  double best_score = -1;
  int since_best = 0;

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    EpochStats stats{epoch, 0.0, 0, -1};
    for (std::size_t idx : order) {
      const auto& doc = documents[idx];
      if (doc.candidates.empty()) continue;
      if (doc.labels.size() != doc.candidates.size())
        throw DataError("training document " + doc.doc_id + " has unlabeled candidates");
      grads.set_zero();
      const Scalar loss = DocumentPass<Scalar>(params, config, doc).backward(doc.labels, grads);
      if (!std::isfinite(double(loss)) || !grads.all_finite())
        throw NumericalError("non-finite loss in epoch " + std::to_string(epoch) + " on document " +
                             doc.doc_id);
      optimizer.step(params, grads);
      stats.mean_loss += double(loss);
      ++stats.updates;
    }
    if (stats.updates) stats.mean_loss /= stats.updates;
    if (hooks.dev_score) stats.dev_score = hooks.dev_score(params.template cast<double>());
    if (hooks.on_epoch) hooks.on_epoch(stats);
    if (early_stopping) {
      if (stats.dev_score > best_score) {
        best_score = stats.dev_score;
        best = params;
        since_best = 0;
      } else if (++since_best >= config.patience) {
        break;
      }
    }
  }
  return early_stopping ? best : params;
}

template <typename Scalar>
std::uint64_t checksum(const ModelParams<Scalar>& params) {
  std::uint64_t h = 1469598103934665603ull;
  params.visit([&](const std::string&, const auto& t) {
    const auto* bytes = reinterpret_cast<const unsigned char*>(t.data());
    for (std::size_t k = 0; k < t.size() * sizeof(Scalar); ++k) {
      h ^= bytes[k];
      h *= 1099511628211ull;
    }
  });
  return h;
}

template class Adam<float>;
template class Adam<double>;
template ModelParams<float> train(ModelParams<float>, std::span<const DocumentBatch>,
                                  const ModelConfig&, const TrainHooks&);
template ModelParams<double> train(ModelParams<double>, std::span<const DocumentBatch>,
                                   const ModelConfig&, const TrainHooks&);
template std::uint64_t checksum(const ModelParams<float>&);
template std::uint64_t checksum(const ModelParams<double>&);

}  // namespace docre::model
