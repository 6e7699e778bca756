#include "oracles.hpp"

#include <algorithm>
#include <map>

namespace oracle {

using namespace docre;

std::set<CandidateKey> keys(std::span<const CandidateTuple> cands) {
  std::set<CandidateKey> out;
  for (const auto& c : cands) out.emplace(c.doc_id, c.entities, c.scale.kind, c.scale.unit);
  return out;
}

std::set<CandidateKey> brute_force_candidates(const AnnotatedDocument& doc,
                                              const RelationSchema& schema, ScaleKind scale) {
  std::vector<std::set<std::string>> ids(schema.arity());
  for (const auto& m : doc.mentions)
    for (int s = 0; s < schema.arity(); ++s)
      if (schema.slots[s] == m.type) ids[s].insert(m.entity_id);

  std::vector<std::pair<int, TokenRange>> spans;
  if (scale == ScaleKind::Document) {
    spans.push_back({-1, {0, doc.document.size()}});
  } else {
    const auto& us = scale == ScaleKind::Sentence ? doc.document.sentences() : doc.document.paragraphs();
    for (const auto& u : us) spans.push_back({u.index, u.tokens});
  }

  std::set<CandidateKey> out;
  std::vector<std::vector<std::string>> pools;
  for (const auto& s : ids) pools.emplace_back(s.begin(), s.end());
  std::size_t total = 1;
  for (const auto& p : pools) total *= p.size();
  for (std::size_t code = 0; code < total; ++code) {
    EntityTuple t(schema.arity());
    std::size_t rest = code;
    for (int s = schema.arity() - 1; s >= 0; --s) {
      t[s] = pools[s][rest % pools[s].size()];
      rest /= pools[s].size();
    }
    for (const auto& [unit, range] : spans) {
      bool all = true;
      for (int s = 0; s < schema.arity() && all; ++s) {
        bool found = false;
        for (const auto& m : doc.mentions)
          found |= m.type == schema.slots[s] && m.entity_id == t[s] && range.contains(m.token_index);
        all = found;
      }
      if (all) out.emplace(doc.document.id(), t, scale, unit);
    }
  }
  return out;
}

AnnotatedDocument random_micro_document(std::mt19937_64& rng, const std::string& id,
                                        int max_mentions) {
  auto below = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  TokenizedParagraphs paragraphs(1 + below(3));
  for (auto& p : paragraphs) {
    p.resize(1 + below(3));
    for (auto& s : p) s.assign(1 + below(5), "w");
  }
  Document plain(id, paragraphs);
  const int n = std::min(plain.size(), below(max_mentions + 1));
  std::vector<int> positions(plain.size());
  for (int i = 0; i < plain.size(); ++i) positions[i] = i;
  std::shuffle(positions.begin(), positions.end(), rng);
  positions.resize(n);
  std::sort(positions.begin(), positions.end());

  std::vector<Mention> mentions;
  for (int pos : positions) {
    Mention m;
    m.type = static_cast<EntityType>(below(3));
    m.entity_id = std::string(to_string(m.type)).substr(0, 1) + std::to_string(below(2));
    m.token_index = pos;
    const auto& c = plain.coord(pos);
    m.sentence_index = c.sentence;
    m.paragraph_index = c.paragraph;
    mentions.push_back(m);
  }
  // Write the dummy token of each mention into the token stream.
  auto structure = plain.structure();
  for (const auto& m : mentions) {
    const auto& c = plain.coord(m.token_index);
    int first_sentence = 0;
    for (int p = 0; p < c.paragraph; ++p) first_sentence += static_cast<int>(structure[p].size());
    const int local_sentence = c.sentence - first_sentence;
    const int offset = m.token_index - plain.sentences()[c.sentence].tokens.begin;
    structure[c.paragraph][local_sentence][offset] = std::string(dummy_token(m.type));
  }
  return {Document(id, structure), mentions};
}

double curve_area(std::span<const Prediction> predictions, const GoldSet& gold) {
  std::vector<Prediction> sorted(predictions.begin(), predictions.end());
  std::sort(sorted.begin(), sorted.end(), [](const Prediction& a, const Prediction& b) {
    return std::tie(b.p, a.doc_id, a.entities) < std::tie(a.p, b.doc_id, b.entities);
  });
  std::size_t total = 0;
  for (const auto& [d, f] : gold) total += f.size();
  double area = 0, prev_recall = 0;
  std::size_t tp = 0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    auto it = gold.find(sorted[k].doc_id);
    if (it != gold.end() && it->second.count(sorted[k].entities)) ++tp;
    const double precision = double(tp) / double(k + 1);
    const double recall = double(tp) / double(total);
    area += precision * (recall - prev_recall);
    prev_recall = recall;
  }
  return area;
}

std::pair<std::vector<Prediction>, GoldSet> random_ranking(std::mt19937_64& rng,
                                                           int max_predictions) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = 1 + static_cast<int>(rng() % max_predictions);
  std::vector<Prediction> preds;
  GoldSet gold;
  for (int k = 0; k < n; ++k) {
    Prediction p;
    p.doc_id = "d" + std::to_string(rng() % 3);
    p.entities = {"D" + std::to_string(k), "G", "M"};
    // Coarse scores so ties happen.
    p.p = (rng() % 4 == 0) ? 0.5 : unit(rng);
    if (rng() % 2) gold[p.doc_id].insert(p.entities);
    preds.push_back(p);
  }
  const int missing = static_cast<int>(rng() % 3);
  for (int k = 0; k < missing; ++k) gold["d9"].insert({"X" + std::to_string(k), "G", "M"});
  if (gold.empty()) gold["d0"].insert({"never", "G", "M"});
  return {preds, gold};
}

}  // namespace oracle
