#include <doctest.h>

#include <cmath>
#include <limits>

#include "docre/errors.hpp"
#include "docre/model/trainer.hpp"
#include "model_fixture.hpp"

using namespace docre;
using namespace docre::model;
using fixture::Fixture;

namespace {

std::vector<DocumentBatch> two_docs(Fixture& fx) {
  auto second = fixture::small_doc("u");
  std::vector<CandidateTuple> cands = {{"u", {"D1", "G", "M"}, {ScaleKind::Document, -1}, 1}};
  return {fx.batch, make_batch(second, cands, fx.schema, fx.vocab, fx.config)};
}

}  // namespace

TEST_CASE("same seed, same parameters") {
  Fixture fx;
  fx.config.epochs = 3;
  const auto docs = two_docs(fx);
  const auto a = train(fx.params, std::span<const DocumentBatch>(docs), fx.config);
  const auto b = train(fx.params, std::span<const DocumentBatch>(docs), fx.config);
  CHECK(checksum(a) == checksum(b));
  CHECK(checksum(a) != checksum(fx.params));
  fx.config.seed += 1;
  const auto c = train(fx.params, std::span<const DocumentBatch>(docs), fx.config);
  CHECK(checksum(c) != checksum(a));  // shuffle order differs
}

TEST_CASE("zero learning rate leaves parameters alone") {
  Fixture fx;
  fx.config.learning_rate = 0;
  fx.config.epochs = 2;
  const auto docs = two_docs(fx);
  CHECK(checksum(train(fx.params, std::span<const DocumentBatch>(docs), fx.config)) ==
        checksum(fx.params));
}

TEST_CASE("first adam step moves each coordinate by about the learning rate") {
  Fixture fx;
  auto grads = fx.params.zeros_like();
  DocumentPass<double>(fx.params, fx.config, fx.batch).backward(fx.batch.labels, grads);
  auto params = fx.params;
  Adam<double> adam(params, 0.01);
  adam.step(params, grads);
  CHECK(adam.steps() == 1);
  std::map<std::string, Matrix<double>> g, before;
  grads.visit([&](const std::string& n, const auto& t) { g[n] = t; });
  fx.params.visit([&](const std::string& n, const auto& t) { before[n] = t; });
  double worst = 0;
  params.visit([&](const std::string& n, const auto& t) {
    const Matrix<double> after = t;
    for (Eigen::Index i = 0; i < after.size(); ++i) {
      const double gi = g[n].data()[i];
      const double expect = before[n].data()[i] - 0.01 * gi / (std::abs(gi) + 1e-8);
      worst = std::max(worst, std::abs(after.data()[i] - expect));
    }
  });
  CHECK(worst < 1e-12);
}

TEST_CASE("training lowers the loss on a tiny problem") {
  Fixture fx;
  fx.config.epochs = 40;
  fx.config.learning_rate = 0.01;
  const auto docs = two_docs(fx);
  std::vector<double> losses;
  TrainHooks hooks;
  hooks.on_epoch = [&](const EpochStats& s) { losses.push_back(s.mean_loss); };
  train(fx.params, std::span<const DocumentBatch>(docs), fx.config, hooks);
  REQUIRE(losses.size() == 40);
  CHECK(losses.back() < 0.5 * losses.front());
}

TEST_CASE("float precision trains too") {
  Fixture fx;
  fx.config.epochs = 2;
  const auto docs = two_docs(fx);
  const auto f = train(fx.params.cast<float>(), std::span<const DocumentBatch>(docs), fx.config);
  CHECK(checksum(f) != checksum(fx.params.cast<float>()));
}

TEST_CASE("non-finite loss aborts") {
  Fixture fx;
  fx.params.output_bias(0) = std::numeric_limits<double>::quiet_NaN();
  const auto docs = two_docs(fx);
  CHECK_THROWS_AS(train(fx.params, std::span<const DocumentBatch>(docs), fx.config), NumericalError);
}

TEST_CASE("unlabeled training candidates are a data error") {
  Fixture fx;
  auto docs = two_docs(fx);
  docs[0].labels.clear();
  CHECK_THROWS_AS(train(fx.params, std::span<const DocumentBatch>(docs), fx.config), DataError);
}

TEST_CASE("patience returns the best dev snapshot") {
  Fixture fx;
  fx.config.epochs = 6;
  fx.config.patience = 2;
  const auto docs = two_docs(fx);
  int calls = 0;
  std::uint64_t best_sum = 0;
  TrainHooks hooks;
  // Best score at epoch 1, then strictly worse: stops after epoch 3.
  hooks.dev_score = [&](const ModelParams<double>& p) {
    ++calls;
    if (calls == 1) best_sum = checksum(p);
    return calls == 1 ? 1.0 : 0.5 / calls;
  };
  const auto out = train(fx.params, std::span<const DocumentBatch>(docs), fx.config, hooks);
  CHECK(calls == 3);
  CHECK(checksum(out) == best_sum);
}
