#include "docre/ensemble.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "docre/errors.hpp"

namespace docre {

using Key = std::pair<std::string, EntityTuple>;

std::string_view to_string(EnsembleKind kind) { return kind == EnsembleKind::Max ? "max" : "noisy-or"; }

EnsembleKind parse_ensemble_kind(std::string_view name) {
  if (name == "max") return EnsembleKind::Max;
  if (name == "noisy-or" || name == "noisyor" || name == "noisy_or") return EnsembleKind::NoisyOr;
  throw DataError("unknown ensemble operator '" + std::string(name) + "'");
}

double combine(std::span<const double> probs, EnsembleKind kind) {
  if (probs.empty()) throw std::invalid_argument("ensemble of an empty list");
  const double top = *std::max_element(probs.begin(), probs.end());
  if (kind == EnsembleKind::Max) return top;
  double miss = 1.0;
  for (double p : probs) miss *= 1.0 - p;
  // 1 - (1 - p) can round below p
  return std::max(1.0 - miss, top);
}

Prediction document_score(std::span<const UnitPrediction> unit_predictions, EnsembleKind kind,
                          const std::string& variant) {
  if (unit_predictions.empty()) throw std::invalid_argument("no unit predictions to combine");
  Prediction out{unit_predictions.front().doc_id, unit_predictions.front().entities, 0, variant, {}};
  std::vector<double> probs;
  std::set<int> units;
  for (const auto& u : unit_predictions) {
    if (u.doc_id != out.doc_id || u.entities != out.entities)
      throw std::invalid_argument("unit predictions refer to different tuples");
    probs.push_back(u.p);
    units.insert(u.unit);
  }
  out.p = combine(probs, kind);
  out.units.assign(units.begin(), units.end());
  return out;
}

std::vector<Prediction> document_scores(std::span<const UnitPrediction> unit_predictions,
                                        EnsembleKind kind, const std::string& variant) {
  std::map<Key, std::vector<UnitPrediction>> groups;
  for (const auto& u : unit_predictions) groups[{u.doc_id, u.entities}].push_back(u);
  std::vector<Prediction> out;
  for (auto& [key, group] : groups) {
    std::sort(group.begin(), group.end(),
              [](const UnitPrediction& a, const UnitPrediction& b) { return a.unit < b.unit; });
    out.push_back(document_score(group, kind, variant));
  }
  return out;
}

std::vector<Prediction> multiscale(std::span<const std::vector<Prediction>> variants,
                                   EnsembleKind kind, const std::string& name) {
  std::map<Key, std::vector<double>> probs;
  std::map<Key, std::set<int>> units;
  for (const auto& variant : variants) {
    for (const auto& p : variant) {
      Key key{p.doc_id, p.entities};
      probs[key].push_back(p.p);
      units[key].insert(p.units.begin(), p.units.end());
    }
  }
  std::vector<Prediction> out;
  for (const auto& [key, ps] : probs) {
    const auto& u = units[key];
    out.push_back({key.first, key.second, combine(ps, kind), name, {u.begin(), u.end()}});
  }
  return out;
}

std::vector<Prediction> subrelation_join(std::span<const Prediction> pair_predictions,
                                         const RelationSchema& pair_schema,
                                         const AssignmentIndex& assignments, EnsembleKind kind,
                                         const std::string& name) {
  const int drug = pair_schema.slot_of(EntityType::Drug);
  const int gene = pair_schema.slot_of(EntityType::Gene);
  const int mutation = pair_schema.slot_of(EntityType::Mutation);
  if (pair_schema.arity() != 2 || drug < 0 || (gene < 0) == (mutation < 0))
    throw DataError("subrelation join expects a drug-gene or drug-mutation schema, got '" +
                    pair_schema.to_string() + "'");

  std::map<Key, std::vector<double>> joined;
  std::map<Key, std::set<int>> units;
  for (const auto& p : pair_predictions) {
    auto doc = assignments.find(p.doc_id);
    if (doc == assignments.end()) continue;
    auto emit = [&](const std::string& g, const std::string& m) {
      Key key{p.doc_id, {p.entities.at(drug), g, m}};
      joined[key].push_back(p.p);
      units[key].insert(p.units.begin(), p.units.end());
    };
    if (mutation >= 0) {
      auto it = doc->second.assigned.find(p.entities.at(mutation));
      if (it != doc->second.assigned.end()) emit(it->second.gene, it->first);
    } else {
      for (const auto& [m, a] : doc->second.assigned)
        if (a.gene == p.entities.at(gene)) emit(a.gene, m);
    }
  }
  std::vector<Prediction> out;
  for (const auto& [key, ps] : joined) {
    const auto& u = units[key];
    out.push_back({key.first, key.second, combine(ps, kind), name, {u.begin(), u.end()}});
  }
  return out;
}

}  // namespace docre
