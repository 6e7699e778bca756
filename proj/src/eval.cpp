#include "docre/eval.hpp"

#include <algorithm>

#include "docre/errors.hpp"

namespace docre {

std::size_t gold_size(const GoldSet& gold) {
  std::size_t n = 0;
  for (const auto& [doc, facts] : gold) n += facts.size();
  return n;
}

bool is_gold(const GoldSet& gold, const std::string& doc_id, const EntityTuple& tuple) {
  auto it = gold.find(doc_id);
  return it != gold.end() && it->second.contains(tuple);
}

std::vector<Prediction> rank(std::span<const Prediction> predictions) {
  std::vector<Prediction> out(predictions.begin(), predictions.end());
  std::sort(out.begin(), out.end(), [](const Prediction& a, const Prediction& b) {
    if (a.p != b.p) return a.p > b.p;
    if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
    return a.entities < b.entities;
  });
  for (std::size_t k = 1; k < out.size(); ++k)
    if (out[k].doc_id == out[k - 1].doc_id && out[k].entities == out[k - 1].entities &&
        out[k].p == out[k - 1].p)
      throw DataError("duplicate prediction for " + out[k].doc_id);
  return out;
}

double average_precision(std::span<const Prediction> predictions, const GoldSet& gold) {
  const std::size_t total = gold_size(gold);
  if (total == 0) throw DataError("average precision is undefined for an empty gold set");
  std::set<std::pair<std::string, EntityTuple>> seen;
  for (const auto& p : predictions)
    if (!seen.emplace(p.doc_id, p.entities).second)
      throw DataError("duplicate prediction for (" + p.doc_id + ", tuple)");
  const auto ranked = rank(predictions);
  double sum = 0;
  std::size_t hits = 0;
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    if (!is_gold(gold, ranked[k].doc_id, ranked[k].entities)) continue;
    ++hits;
    sum += double(hits) / double(k + 1);
  }
  return sum / double(total);
}

double max_recall(std::span<const Prediction> predictions, const GoldSet& gold) {
  const std::size_t total = gold_size(gold);
  if (total == 0) throw DataError("max recall is undefined for an empty gold set");
  std::set<std::pair<std::string, EntityTuple>> found;
  for (const auto& p : predictions)
    if (is_gold(gold, p.doc_id, p.entities)) found.emplace(p.doc_id, p.entities);
  return double(found.size()) / double(total);
}

double max_recall(std::span<const CandidateTuple> candidates, const GoldSet& gold) {
  const std::size_t total = gold_size(gold);
  if (total == 0) throw DataError("max recall is undefined for an empty gold set");
  std::set<std::pair<std::string, EntityTuple>> found;
  for (const auto& c : candidates)
    if (is_gold(gold, c.doc_id, c.entities)) found.emplace(c.doc_id, c.entities);
  return double(found.size()) / double(total);
}

namespace {

ThresholdMetrics finish(double threshold, std::size_t tp, std::size_t fp, std::size_t total_gold) {
  ThresholdMetrics m;
  m.threshold = threshold;
  m.tp = tp;
  m.fp = fp;
  m.fn = total_gold - tp;
  m.precision = tp + fp ? double(tp) / double(tp + fp) : 0.0;
  m.recall = total_gold ? double(tp) / double(total_gold) : 0.0;
  m.f1 = m.precision + m.recall > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  return m;
}

}  // namespace

ThresholdMetrics metrics_at(std::span<const Prediction> predictions, const GoldSet& gold,
                            double threshold) {
  std::size_t tp = 0, fp = 0;
  for (const auto& p : predictions) {
    if (p.p < threshold) continue;
    (is_gold(gold, p.doc_id, p.entities) ? tp : fp)++;
  }
  return finish(threshold, tp, fp, gold_size(gold));
}

std::vector<PrPoint> pr_curve(std::span<const Prediction> predictions, const GoldSet& gold) {
  const auto ranked = rank(predictions);
  const std::size_t total = gold_size(gold);
  std::vector<PrPoint> out;
  std::size_t tp = 0, fp = 0;
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    (is_gold(gold, ranked[k].doc_id, ranked[k].entities) ? tp : fp)++;
    if (k + 1 < ranked.size() && ranked[k + 1].p == ranked[k].p) continue;
    const auto m = finish(ranked[k].p, tp, fp, total);
    out.push_back({m.threshold, m.precision, m.recall});
  }
  return out;
}

double tune_threshold(std::span<const Prediction> predictions, const GoldSet& gold) {
  if (predictions.empty()) throw DataError("threshold tuning needs at least one prediction");
  const auto ranked = rank(predictions);
  const std::size_t total = gold_size(gold);
  double best_threshold = ranked.front().p;
  double best_f1 = -1;
  std::size_t tp = 0, fp = 0;
  // Descending scan: a later threshold is lower, so only a strictly better F1
  // replaces the current best.
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    (is_gold(gold, ranked[k].doc_id, ranked[k].entities) ? tp : fp)++;
    if (k + 1 < ranked.size() && ranked[k + 1].p == ranked[k].p) continue;
    const auto m = finish(ranked[k].p, tp, fp, total);
    if (m.f1 > best_f1) {
      best_f1 = m.f1;
      best_threshold = m.threshold;
    }
  }
  return best_threshold;
}

std::string_view to_string(CoScope scope) {
  switch (scope) {
    case CoScope::Sentence: return "sentence";
    case CoScope::Paragraph: return "cross_sentence_within_paragraph";
    case CoScope::CrossParagraph: return "cross_paragraph";
  }
  return "?";
}

CoScope narrowest_scope(const AnnotatedDocument& doc, const RelationSchema& schema,
                        const EntityTuple& tuple) {
  std::vector<std::set<int>> sentences(schema.arity()), paragraphs(schema.arity());
  for (const auto& m : doc.mentions) {
    const int slot = schema.slot_of(m.type);
    if (slot < 0 || tuple.at(slot) != m.entity_id) continue;
    sentences[slot].insert(m.sentence_index);
    paragraphs[slot].insert(m.paragraph_index);
  }
  auto shared = [](const std::vector<std::set<int>>& sets) {
    for (int u : sets.front()) {
      bool all = true;
      for (std::size_t k = 1; k < sets.size() && all; ++k) all = sets[k].contains(u);
      if (all) return true;
    }
    return false;
  };
  for (const auto& s : sentences)
    if (s.empty())
      throw DataError("entity tuple not fully mentioned in document " + doc.document.id());
  if (shared(sentences)) return CoScope::Sentence;
  if (shared(paragraphs)) return CoScope::Paragraph;
  return CoScope::CrossParagraph;
}

ScopeBreakdown scope_breakdown(std::span<const Prediction> correct,
                               const std::map<std::string, const AnnotatedDocument*>& documents,
                               const RelationSchema& schema) {
  ScopeBreakdown out;
  for (const auto& p : correct) {
    auto it = documents.find(p.doc_id);
    if (it == documents.end()) throw DataError("no document for extraction in " + p.doc_id);
    switch (narrowest_scope(*it->second, schema, p.entities)) {
      case CoScope::Sentence: ++out.sentence; break;
      case CoScope::Paragraph: ++out.paragraph; break;
      case CoScope::CrossParagraph: ++out.cross_paragraph; break;
    }
  }
  return out;
}

EvalReport evaluate(std::span<const Prediction> predictions, const GoldSet& gold, double threshold) {
  EvalReport r;
  r.auc = average_precision(predictions, gold);
  r.max_recall = max_recall(predictions, gold);
  r.at_threshold = metrics_at(predictions, gold, threshold);
  r.num_predictions = predictions.size();
  r.num_gold = gold_size(gold);
  return r;
}

}  // namespace docre
