#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "docre/candidates.hpp"
#include "docre/model/config.hpp"
#include "docre/model/lstm.hpp"
#include "docre/model/params.hpp"
#include "docre/model/vocabulary.hpp"

namespace docre::model {

// Mention tuple sets of one candidate, one per subrelation head.
struct CandidateLayout {
  std::vector<MentionTupleSet> subsets;
};

// Everything the network reads for one document: the document is the batch.
struct DocumentBatch {
  std::string doc_id;
  std::vector<int> token_ids;          // masked token stream as vocabulary ids
  std::vector<DiscourseUnit> units;    // all units of config.unit_kind
  std::vector<CandidateLayout> candidates;
  std::vector<int> labels;             // one per candidate; empty at inference
};

DocumentBatch make_batch(const AnnotatedDocument& masked, std::span<const CandidateTuple> candidates,
                         const RelationSchema& schema, const Vocabulary& vocab,
                         const ModelConfig& config);

// Forward pass over one document batch with the activations needed for
// backpropagation. Each referenced discourse unit is encoded once; each
// distinct (subrelation, mention tuple) representation is computed once and
// shared by every candidate that contains it.
template <typename Scalar>
class DocumentPass {
 public:
  DocumentPass(const ModelParams<Scalar>& params, const ModelConfig& config,
               const DocumentBatch& batch);

  int num_candidates() const { return static_cast<int>(probs_.cols()); }
  // num_classes x candidates
  const Matrix<Scalar>& probabilities() const { return probs_; }
  Vector<Scalar> entity_representation(int candidate, int subset) const;
  bool uses_fallback(int candidate, int subset) const;
  // Classifier input for `candidate` (concatenated entity representations).
  Vector<Scalar> classifier_input(int candidate) const { return inputs_.col(candidate); }
  // 2H x T BiLSTM states of `unit`; throws std::out_of_range if not encoded.
  const Matrix<Scalar>& unit_hidden(int unit) const;
  std::vector<int> contributing_units(int candidate) const;

  // Mean negative log-likelihood over the candidates (0 when there are none).
  Scalar loss(std::span<const int> labels) const;
  // Accumulates d(loss)/d(params) into `grads` and returns the loss.
  Scalar backward(std::span<const int> labels, ModelParams<Scalar>& grads) const;

 private:
  struct EncodedUnit {
    DiscourseUnit unit;
    Matrix<Scalar> inputs;
    LstmTrace<Scalar> forward;
    LstmTrace<Scalar> backward;
    Matrix<Scalar> hidden;
  };
  struct TupleKey {
    int unit;
    std::vector<int> tokens;
    auto operator<=>(const TupleKey&) const = default;
  };
  struct SubsetReps {
    std::vector<TupleKey> keys;
    Matrix<Scalar> inputs;  // |S| * 2H x R
    Matrix<Scalar> reps;    // d_mention x R, post-tanh
  };
  struct Slot {
    std::vector<int> reps;  // columns of SubsetReps::reps; empty -> fallback
    Matrix<Scalar> jacobian;
  };

  const EncodedUnit& encoded(int unit) const;

  const ModelParams<Scalar>& params_;
  const ModelConfig& config_;
  const DocumentBatch& batch_;
  std::vector<EncodedUnit> units_;
  std::map<int, int> unit_slot_;
  std::vector<SubsetReps> subset_reps_;
  std::vector<std::vector<Slot>> slots_;  // [candidate][subset]
  Matrix<Scalar> inputs_;                 // (#subsets * d_mention) x N
  Matrix<Scalar> hidden_pre_;             // ffn_hidden x N
  Matrix<Scalar> hidden_;                 // ffn_hidden x N
  Matrix<Scalar> log_probs_;              // num_classes x N
  Matrix<Scalar> probs_;
};

// Class probabilities, one column per candidate.
template <typename Scalar>
Matrix<Scalar> predict(const ModelParams<Scalar>& params, const ModelConfig& config,
                       const DocumentBatch& batch);

}  // namespace docre::model
