#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "docre/errors.hpp"
#include "docre/model/checkpoint.hpp"
#include "docre/model/embedding.hpp"
#include "docre/model/grad_check.hpp"
#include "docre/model/lstm.hpp"
#include "docre/model/network.hpp"
#include "model_fixture.hpp"

using namespace docre;
using namespace docre::model;

using fixture::Fixture;

TEST_CASE("sinusoidal unit index") {
  const Vector<double> zero = sinusoid<double>(0, 8);
  for (int i = 0; i < 8; ++i) CHECK(zero(i) == (i % 2 == 0 ? 0.0 : 1.0));
  const Vector<double> p = sinusoid<double>(3, 6);
  for (int i = 0; 2 * i < 6; ++i) {
    const double freq = std::pow(10000.0, -2.0 * i / 6.0);
    CHECK(p(2 * i) == doctest::Approx(std::sin(3 * freq)).epsilon(1e-14));
    CHECK(p(2 * i + 1) == doctest::Approx(std::cos(3 * freq)).epsilon(1e-14));
  }
}

TEST_CASE("embedding concatenates word and unit index parts") {
  Matrix<double> words = Matrix<double>::Random(3, 4);
  const std::vector<int> ids{2, 0};
  const Matrix<double> a = embed(words, std::span<const int>(ids), 0, 4);
  const Matrix<double> b = embed(words, std::span<const int>(ids), 1, 4);
  CHECK(a.rows() == 7);
  CHECK(a.topRows(3) == b.topRows(3));
  CHECK(a.bottomRows(4) != b.bottomRows(4));
  CHECK(a.col(1).head(3) == words.col(0));  // unknown token row

  Vocabulary vocab;
  vocab.add("a");
  CHECK(vocab.id("a") != Vocabulary::kUnknown);
  CHECK(vocab.id("never seen") == Vocabulary::kUnknown);
}

TEST_CASE("tied BiLSTM on a palindrome mirrors its directions") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  const int D = 3, H = 2;
  LstmWeights<double> w{Matrix<double>(4 * H, D), Matrix<double>(4 * H, H), Vector<double>(4 * H)};
  for (auto* m : {&w.input, &w.recurrent})
    for (int i = 0; i < m->size(); ++i) m->data()[i] = u(rng);
  for (int i = 0; i < w.bias.size(); ++i) w.bias(i) = u(rng);

  Matrix<double> x(D, 5);
  for (int t = 0; t < 3; ++t)
    for (int r = 0; r < D; ++r) x(r, t) = x(r, 4 - t) = u(rng);
  const auto f = lstm_forward(w, x, false);
  const auto b = lstm_forward(w, x, true);
  for (int t = 0; t < 5; ++t) CHECK(f.hidden.col(t).isApprox(b.hidden.col(4 - t), 1e-14));

  const Matrix<double> single = x.leftCols(1);
  CHECK(lstm_forward(w, single, false).hidden.isApprox(lstm_forward(w, single, true).hidden, 1e-15));
}

TEST_CASE("network shapes, substitution, and probabilities") {
  Fixture fx;
  const DocumentPass<double> pass(fx.params, fx.config, fx.batch);
  CHECK(pass.num_candidates() == 2);
  CHECK(fx.params.heads.size() == 4);
  CHECK(fx.params.heads[3].weight.cols() == 3 * 2 * fx.config.lstm_hidden);
  CHECK(fx.params.heads[0].weight.cols() == 2 * 2 * fx.config.lstm_hidden);
  CHECK(pass.unit_hidden(0).rows() == 2 * fx.config.lstm_hidden);
  CHECK(pass.unit_hidden(0).cols() == 8);
  CHECK(pass.classifier_input(0).size() == 4 * fx.config.d_mention);

  for (int c = 0; c < 2; ++c)
    CHECK(std::abs(pass.probabilities().col(c).sum() - 1.0) < 1e-9);

  // D1: every subset co-occurs in some paragraph. D2: only (G, M) does.
  for (int s = 0; s < 4; ++s) CHECK_FALSE(pass.uses_fallback(0, s));
  CHECK(pass.uses_fallback(1, 0));
  CHECK(pass.uses_fallback(1, 1));
  CHECK_FALSE(pass.uses_fallback(1, 2));
  CHECK(pass.uses_fallback(1, 3));
  CHECK(pass.entity_representation(1, 3) == fx.params.heads[3].fallback);

  // Dropping one subset's tuples changes only that slot.
  auto edited = fx.batch;
  edited.candidates[0].subsets[1].tuples.clear();
  const DocumentPass<double> after(fx.params, fx.config, edited);
  const int dm = fx.config.d_mention;
  for (int s = 0; s < 4; ++s) {
    const bool same = pass.classifier_input(0).segment(s * dm, dm) ==
                      after.classifier_input(0).segment(s * dm, dm);
    CHECK(same == (s != 1));
  }
  CHECK(after.entity_representation(0, 1) == fx.params.heads[1].fallback);
}

TEST_CASE("mention representations are tanh-bounded") {
  Fixture fx;
  fx.config.aggregator = Aggregator::Max;
  const DocumentPass<double> pass(fx.params, fx.config, fx.batch);
  for (int s = 0; s < 4; ++s) {
    if (pass.uses_fallback(0, s)) continue;
    CHECK(pass.entity_representation(0, s).cwiseAbs().maxCoeff() < 1.0);
  }
}

TEST_CASE("tuple order does not change predictions") {
  Fixture fx;
  const DocumentPass<double> pass(fx.params, fx.config, fx.batch);
  auto shuffled = fx.batch;
  std::mt19937 rng(1);
  for (auto& c : shuffled.candidates)
    for (auto& s : c.subsets) std::shuffle(s.tuples.begin(), s.tuples.end(), rng);
  std::reverse(shuffled.candidates[0].subsets[2].tuples.begin(),
               shuffled.candidates[0].subsets[2].tuples.end());
  const DocumentPass<double> other(fx.params, fx.config, shuffled);
  CHECK((pass.probabilities() - other.probabilities()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("editing one unit leaves other units' states untouched") {
  Fixture fx;
  const DocumentPass<double> pass(fx.params, fx.config, fx.batch);
  auto edited = fx.batch;
  edited.token_ids[1] = fx.vocab.id("alone");  // inside paragraph 0
  const DocumentPass<double> after(fx.params, fx.config, edited);
  CHECK(after.unit_hidden(1) == pass.unit_hidden(1));
  CHECK(after.unit_hidden(0) != pass.unit_hidden(0));
}

TEST_CASE("loss worked examples") {
  Fixture fx;
  fx.params.output_weight.setZero();
  fx.params.output_bias.setZero();
  const std::vector<int> labels{1, 0};
  CHECK(DocumentPass<double>(fx.params, fx.config, fx.batch).loss(labels) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  fx.params.output_bias << std::log(0.2), std::log(0.8);
  const DocumentPass<double> pass(fx.params, fx.config, fx.batch);
  CHECK(pass.probabilities()(1, 0) == doctest::Approx(0.8).epsilon(1e-12));
  const std::vector<int> one{1, 1};
  CHECK(pass.loss(one) == doctest::Approx(0.2231435513).epsilon(1e-9));

  fx.params.output_bias << -40.0, 40.0;
  CHECK(DocumentPass<double>(fx.params, fx.config, fx.batch).loss(one) < 1e-15);

  DocumentBatch empty = fx.batch;
  empty.candidates.clear();
  CHECK(DocumentPass<double>(fx.params, fx.config, empty).loss({}) == 0.0);
}

TEST_CASE("analytic gradients match finite differences") {
  for (auto agg : {Aggregator::LogSumExp, Aggregator::Max}) {
    Fixture fx;
    fx.config.aggregator = agg;
    const std::vector<int> labels{1, 0};
    const auto result = grad_check(fx.params, fx.config, fx.batch, labels, 1e-4);
    INFO("worst tensor " << result.worst_tensor);
    CHECK(result.max_relative_error < 1e-4);
    CHECK(result.analytic_norm.at("subrelation3.fallback") > 0);
    CHECK(result.analytic_norm.at("lstm_backward.recurrent") > 0);
  }
}

TEST_CASE("near-zero loss gives near-zero gradients") {
  Fixture fx;
  fx.params.output_bias << -40.0, 40.0;
  const std::vector<int> labels{1, 1};
  const auto result = grad_check(fx.params, fx.config, fx.batch, labels, 1e-4);
  for (const auto& [name, norm] : result.analytic_norm) CHECK(norm < 1e-12);
}

TEST_CASE("checkpoint round trip is exact") {
  Fixture fx;
  TrainedModel m{Variant::DocLevel, fx.config, fx.schema, fx.vocab, fx.params};
  m.config.mention_tuple_cap = 7;
  const auto path = std::filesystem::temp_directory_path() / "docre_ckpt_test.json";
  save_checkpoint(m, path);
  const auto back = load_checkpoint(path);
  CHECK(back.variant == m.variant);
  CHECK(back.schema == m.schema);
  CHECK(back.vocab.tokens() == m.vocab.tokens());
  CHECK(back.config.mention_tuple_cap == 7);
  CHECK(back.config.d_mention == m.config.d_mention);
  std::vector<std::string> mismatched;
  std::map<std::string, Matrix<double>> original;
  m.params.visit([&](const std::string& name, const auto& t) { original[name] = t; });
  back.params.visit([&](const std::string& name, const auto& t) {
    if (Matrix<double>(t) != original.at(name)) mismatched.push_back(name);
  });
  CHECK(mismatched.empty());
  std::filesystem::remove(path);
}

TEST_CASE("word vector file replaces vocabulary rows") {
  Fixture fx;
  const auto path = std::filesystem::temp_directory_path() / "docre_vectors_test.txt";
  {
    std::ofstream out(path);
    out << "inhibits 1 2 3 4\nnotinvocab 9 9 9 9\n";
  }
  auto words = fx.params.word_vectors;
  CHECK(load_word_vectors(path, fx.vocab, words) == 1);
  CHECK(words.col(fx.vocab.id("inhibits")) == Vector<double>((Vector<double>(4) << 1, 2, 3, 4).finished()));
  {
    std::ofstream out(path);
    out << "inhibits 1 2 3\n";
  }
  CHECK_THROWS_AS(load_word_vectors(path, fx.vocab, words), DataError);
  std::filesystem::remove(path);
}
