#include "docre/model/network.hpp"

#include <set>
#include <stdexcept>

#include "docre/model/aggregate.hpp"
#include "docre/model/embedding.hpp"

namespace docre::model {

DocumentBatch make_batch(const AnnotatedDocument& masked, std::span<const CandidateTuple> candidates,
                         const RelationSchema& schema, const Vocabulary& vocab,
                         const ModelConfig& config) {
  DocumentBatch batch;
  batch.doc_id = masked.document.id();
  batch.token_ids = vocab.ids(masked.document.tokens());
  batch.units = masked.document.units(config.unit_kind);
  const auto subsets = schema.subsets();
  bool labelled = !candidates.empty();
  for (const auto& c : candidates) {
    CandidateLayout layout;
    for (const auto& s : subsets)
      layout.subsets.push_back(
          mention_tuples(c, masked, schema, s, config.unit_kind, config.mention_tuple_cap));
    batch.candidates.push_back(std::move(layout));
    labelled = labelled && c.label.has_value();
  }
  if (labelled)
    for (const auto& c : candidates) batch.labels.push_back(*c.label);
  return batch;
}

template <typename Scalar>
DocumentPass<Scalar>::DocumentPass(const ModelParams<Scalar>& params, const ModelConfig& config,
                                   const DocumentBatch& batch)
    : params_(params), config_(config), batch_(batch) {
  const int H = config.lstm_hidden;
  const int num_subsets = static_cast<int>(params.heads.size());
  const int N = static_cast<int>(batch.candidates.size());

  // Distinct mention tuples per subset and the units they touch.
  std::vector<std::map<TupleKey, int>> key_index(num_subsets);
  subset_reps_.resize(num_subsets);
  slots_.assign(N, std::vector<Slot>(num_subsets));
  for (int c = 0; c < N; ++c) {
    const auto& layout = batch.candidates[c];
    if (static_cast<int>(layout.subsets.size()) != num_subsets)
      throw std::invalid_argument("candidate layout does not match the model's subrelations");
    for (int s = 0; s < num_subsets; ++s) {
      for (const auto& t : layout.subsets[s].tuples) {
        TupleKey key{t.unit, t.tokens};
        auto [it, inserted] = key_index[s].try_emplace(key, int(subset_reps_[s].keys.size()));
        if (inserted) subset_reps_[s].keys.push_back(key);
        slots_[c][s].reps.push_back(it->second);
        unit_slot_.try_emplace(t.unit, -1);
      }
    }
  }

  // Encode referenced units in unit order.
  for (auto& [unit, slot] : unit_slot_) {
    EncodedUnit e;
    e.unit = batch.units.at(unit);
    std::span<const int> ids(batch.token_ids.data() + e.unit.tokens.begin, e.unit.tokens.size());
    e.inputs = embed<Scalar>(params.word_vectors, ids, e.unit.index, config.d_unit_index);
    e.forward = lstm_forward(params.forward, e.inputs, false);
    e.backward = lstm_forward(params.backward, e.inputs, true);
    e.hidden.resize(2 * H, e.inputs.cols());
    e.hidden.topRows(H) = e.forward.hidden;
    e.hidden.bottomRows(H) = e.backward.hidden;
    slot = static_cast<int>(units_.size());
    units_.push_back(std::move(e));
  }

  // Mention-level representations.
  for (int s = 0; s < num_subsets; ++s) {
    auto& sr = subset_reps_[s];
    const auto R = static_cast<Eigen::Index>(sr.keys.size());
    const auto width = params.heads[s].weight.cols();
    sr.inputs.resize(width, R);
    for (Eigen::Index r = 0; r < R; ++r) {
      const auto& key = sr.keys[r];
      const auto& e = encoded(key.unit);
      for (std::size_t k = 0; k < key.tokens.size(); ++k)
        sr.inputs.col(r).segment(k * 2 * H, 2 * H) = e.hidden.col(key.tokens[k] - e.unit.tokens.begin);
    }
    sr.reps = ((params.heads[s].weight * sr.inputs).colwise() + params.heads[s].bias).array().tanh();
  }

  // Entity-level representations and the classifier.
  const int dm = config.d_mention;
  inputs_.resize(num_subsets * dm, N);
  for (int c = 0; c < N; ++c) {
    for (int s = 0; s < num_subsets; ++s) {
      auto& slot = slots_[c][s];
      auto out = inputs_.col(c).segment(s * dm, dm);
      if (slot.reps.empty()) {
        out = params.heads[s].fallback;
        continue;
      }
      Matrix<Scalar> gathered(dm, static_cast<Eigen::Index>(slot.reps.size()));
      for (std::size_t k = 0; k < slot.reps.size(); ++k)
        gathered.col(k) = subset_reps_[s].reps.col(slot.reps[k]);
      const Vector<Scalar> pooled = aggregate(gathered, config.aggregator);
      slot.jacobian = aggregate_jacobian(gathered, pooled, config.aggregator);
      out = pooled;
    }
  }
  hidden_pre_ = (params.hidden_weight * inputs_).colwise() + params.hidden_bias;
  hidden_ = hidden_pre_.cwiseMax(Scalar(0));
  const Matrix<Scalar> logits = (params.output_weight * hidden_).colwise() + params.output_bias;
  log_probs_.resize(logits.rows(), N);
  for (int c = 0; c < N; ++c) {
    const Matrix<Scalar> row = logits.col(c).transpose();
    log_probs_.col(c) = logits.col(c).array() - logsumexp(row)(0);
  }
  probs_ = log_probs_.array().exp();
}

template <typename Scalar>
const typename DocumentPass<Scalar>::EncodedUnit& DocumentPass<Scalar>::encoded(int unit) const {
  return units_.at(unit_slot_.at(unit));
}

template <typename Scalar>
const Matrix<Scalar>& DocumentPass<Scalar>::unit_hidden(int unit) const {
  return encoded(unit).hidden;
}

template <typename Scalar>
Vector<Scalar> DocumentPass<Scalar>::entity_representation(int candidate, int subset) const {
  return inputs_.col(candidate).segment(subset * config_.d_mention, config_.d_mention);
}

template <typename Scalar>
bool DocumentPass<Scalar>::uses_fallback(int candidate, int subset) const {
  return slots_.at(candidate).at(subset).reps.empty();
}

template <typename Scalar>
std::vector<int> DocumentPass<Scalar>::contributing_units(int candidate) const {
  std::set<int> units;
  for (const auto& set : batch_.candidates.at(candidate).subsets)
    for (const auto& t : set.tuples) units.insert(t.unit);
  return {units.begin(), units.end()};
}

template <typename Scalar>
Scalar DocumentPass<Scalar>::loss(std::span<const int> labels) const {
  const int N = num_candidates();
  if (N == 0) return Scalar(0);
  if (static_cast<int>(labels.size()) != N)
    throw std::invalid_argument("label count does not match candidate count");
  Scalar total = 0;
  for (int c = 0; c < N; ++c) total -= log_probs_(labels[c], c);
  return total / Scalar(N);
}

template <typename Scalar>
Scalar DocumentPass<Scalar>::backward(std::span<const int> labels, ModelParams<Scalar>& grads) const {
  const Scalar value = loss(labels);
  const int N = num_candidates();
  if (N == 0) return value;
  const int H = config_.lstm_hidden;
  const int dm = config_.d_mention;
  const int num_subsets = static_cast<int>(params_.heads.size());

  Matrix<Scalar> d_logits = probs_;
  for (int c = 0; c < N; ++c) d_logits(labels[c], c) -= Scalar(1);
  d_logits /= Scalar(N);

  grads.output_weight.noalias() += d_logits * hidden_.transpose();
  grads.output_bias += d_logits.rowwise().sum();
  const Matrix<Scalar> d_hidden =
      (params_.output_weight.transpose() * d_logits).array() *
      (hidden_pre_.array() > Scalar(0)).template cast<Scalar>();
  grads.hidden_weight.noalias() += d_hidden * inputs_.transpose();
  grads.hidden_bias += d_hidden.rowwise().sum();
  const Matrix<Scalar> d_inputs = params_.hidden_weight.transpose() * d_hidden;

  std::vector<Matrix<Scalar>> d_reps(num_subsets);
  for (int s = 0; s < num_subsets; ++s)
    d_reps[s] = Matrix<Scalar>::Zero(dm, subset_reps_[s].reps.cols());
  for (int c = 0; c < N; ++c) {
    for (int s = 0; s < num_subsets; ++s) {
      const auto& slot = slots_[c][s];
      const auto d_slot = d_inputs.col(c).segment(s * dm, dm);
      if (slot.reps.empty()) {
        grads.heads[s].fallback += d_slot;
        continue;
      }
      for (std::size_t k = 0; k < slot.reps.size(); ++k)
        d_reps[s].col(slot.reps[k]) += slot.jacobian.col(k).cwiseProduct(d_slot);
    }
  }

  std::vector<Matrix<Scalar>> d_unit_hidden;
  for (const auto& e : units_) d_unit_hidden.push_back(Matrix<Scalar>::Zero(2 * H, e.hidden.cols()));
  for (int s = 0; s < num_subsets; ++s) {
    const auto& sr = subset_reps_[s];
    if (sr.keys.empty()) continue;
    const Matrix<Scalar> d_pre =
        d_reps[s].array() * (Scalar(1) - sr.reps.array().square());
    grads.heads[s].weight.noalias() += d_pre * sr.inputs.transpose();
    grads.heads[s].bias += d_pre.rowwise().sum();
    const Matrix<Scalar> d_x = params_.heads[s].weight.transpose() * d_pre;
    for (std::size_t r = 0; r < sr.keys.size(); ++r) {
      const auto& key = sr.keys[r];
      const int slot = unit_slot_.at(key.unit);
      const int begin = units_[slot].unit.tokens.begin;
      for (std::size_t k = 0; k < key.tokens.size(); ++k)
        d_unit_hidden[slot].col(key.tokens[k] - begin) += d_x.col(r).segment(k * 2 * H, 2 * H);
    }
  }

  const int d_word = config_.d_word;
  for (std::size_t u = 0; u < units_.size(); ++u) {
    const auto& e = units_[u];
    const Matrix<Scalar> d_fwd = d_unit_hidden[u].topRows(H);
    const Matrix<Scalar> d_bwd = d_unit_hidden[u].bottomRows(H);
    Matrix<Scalar> d_x = lstm_backward(params_.forward, e.inputs, e.forward, d_fwd, false, grads.forward);
    d_x += lstm_backward(params_.backward, e.inputs, e.backward, d_bwd, true, grads.backward);
    for (Eigen::Index t = 0; t < d_x.cols(); ++t)
      grads.word_vectors.col(batch_.token_ids[e.unit.tokens.begin + t]) += d_x.col(t).head(d_word);
  }
  return value;
}

template <typename Scalar>
Matrix<Scalar> predict(const ModelParams<Scalar>& params, const ModelConfig& config,
                       const DocumentBatch& batch) {
  return DocumentPass<Scalar>(params, config, batch).probabilities();
}

template class DocumentPass<float>;
template class DocumentPass<double>;
template Matrix<float> predict(const ModelParams<float>&, const ModelConfig&, const DocumentBatch&);
template Matrix<double> predict(const ModelParams<double>&, const ModelConfig&, const DocumentBatch&);

}  // namespace docre::model
