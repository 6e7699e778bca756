#include "docre/candidates.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <map>
#include <random>

#include "docre/errors.hpp"

namespace docre {

namespace {

// Distinct entity ids per schema slot among `mentions` inside `span`.
std::vector<std::vector<std::string>> entities_by_slot(std::span<const Mention> mentions,
                                                       const RelationSchema& schema,
                                                       TokenRange span) {
  std::vector<std::set<std::string>> sets(schema.arity());
  for (const auto& m : mentions) {
    if (!span.contains(m.token_index)) continue;
    const int slot = schema.slot_of(m.type);
    if (slot >= 0) sets[slot].insert(m.entity_id);
  }
  std::vector<std::vector<std::string>> out;
  for (auto& s : sets) out.emplace_back(s.begin(), s.end());
  return out;
}

template <typename Fn>
void cross_product(const std::vector<std::vector<std::string>>& slots, Fn&& emit) {
  for (const auto& s : slots)
    if (s.empty()) return;
  std::vector<std::size_t> idx(slots.size(), 0);
  EntityTuple tuple(slots.size());
  while (true) {
    for (std::size_t k = 0; k < slots.size(); ++k) tuple[k] = slots[k][idx[k]];
    emit(tuple);
    std::size_t k = slots.size();
    while (k > 0) {
      --k;
      if (++idx[k] < slots[k].size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
  }
}

}  // namespace

int RelationSchema::slot_of(EntityType type) const {
  for (int k = 0; k < arity(); ++k)
    if (slots[k] == type) return k;
  return -1;
}

std::vector<std::vector<int>> RelationSchema::subsets() const {
  std::vector<std::vector<int>> out;
  const int n = arity();
  for (int size = 2; size <= n; ++size) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (std::popcount(mask) != size) continue;
      std::vector<int> s;
      for (int k = 0; k < n; ++k)
        if (mask & (1u << k)) s.push_back(k);
      out.push_back(std::move(s));
    }
    std::sort(out.end() - std::count_if(out.begin(), out.end(),
                                        [&](const auto& s) { return int(s.size()) == size; }),
              out.end());
  }
  return out;
}

void RelationSchema::validate() const {
  if (arity() < 2) throw DataError("relation schema needs at least two slots");
  if (num_classes < 2) throw DataError("relation schema needs at least two classes");
  std::set<EntityType> distinct(slots.begin(), slots.end());
  if (int(distinct.size()) != arity())
    throw DataError("relation schema slots must have distinct entity types");
}

RelationSchema RelationSchema::parse(std::string_view spec, int num_classes) {
  RelationSchema schema;
  schema.slots.clear();
  schema.num_classes = num_classes;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const auto comma = spec.find(',', start);
    schema.slots.push_back(parse_entity_type(
        spec.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  schema.validate();
  return schema;
}

std::string RelationSchema::to_string() const {
  std::string out;
  for (int k = 0; k < arity(); ++k) {
    if (k) out += ',';
    out += docre::to_string(slots[k]);
  }
  return out;
}

std::string_view to_string(ScaleKind kind) {
  switch (kind) {
    case ScaleKind::Sentence: return "sentence";
    case ScaleKind::Paragraph: return "paragraph";
    case ScaleKind::Document: return "document";
  }
  return "?";
}

ScaleKind parse_scale_kind(std::string_view name) {
  if (name == "sentence") return ScaleKind::Sentence;
  if (name == "paragraph") return ScaleKind::Paragraph;
  if (name == "document") return ScaleKind::Document;
  throw DataError("unknown scale '" + std::string(name) + "'");
}

TokenRange span_of(const Document& doc, const Scale& scale) {
  switch (scale.kind) {
    case ScaleKind::Sentence: return doc.sentences().at(scale.unit).tokens;
    case ScaleKind::Paragraph: return doc.paragraphs().at(scale.unit).tokens;
    case ScaleKind::Document: return {0, doc.size()};
  }
  return {};
}

std::vector<CandidateTuple> generate(const AnnotatedDocument& doc, const RelationSchema& schema,
                                     ScaleKind scale) {
  std::vector<CandidateTuple> out;
  auto emit_for = [&](Scale s) {
    const auto slots = entities_by_slot(doc.mentions, schema, span_of(doc.document, s));
    cross_product(slots, [&](const EntityTuple& t) {
      out.push_back({doc.document.id(), t, s, std::nullopt});
    });
  };
  if (scale == ScaleKind::Document) {
    emit_for({ScaleKind::Document, -1});
  } else {
    const auto kind = scale == ScaleKind::Sentence ? UnitKind::Sentence : UnitKind::Paragraph;
    for (int u = 0; u < doc.document.num_units(kind); ++u) emit_for({scale, u});
  }
  return out;
}

MentionTupleSet mention_tuples(const CandidateTuple& candidate, const AnnotatedDocument& doc,
                               const RelationSchema& schema, std::span<const int> subset,
                               UnitKind unit_kind, std::optional<std::size_t> cap) {
  MentionTupleSet out;
  out.subset.assign(subset.begin(), subset.end());
  const TokenRange span = span_of(doc.document, candidate.scale);

  // unit -> per-subset-position token indices
  std::map<int, std::vector<std::vector<int>>> by_unit;
  for (const auto& m : doc.mentions) {
    if (!span.contains(m.token_index)) continue;
    const int slot = schema.slot_of(m.type);
    if (slot < 0 || candidate.entities.at(slot) != m.entity_id) continue;
    const auto pos = std::find(subset.begin(), subset.end(), slot);
    if (pos == subset.end()) continue;
    auto& lists = by_unit[doc.document.unit_of(m.token_index, unit_kind)];
    lists.resize(subset.size());
    lists[pos - subset.begin()].push_back(m.token_index);
  }

  for (auto& [unit, lists] : by_unit) {
    bool complete = true;
    for (auto& l : lists) {
      std::sort(l.begin(), l.end());
      complete &= !l.empty();
    }
    if (!complete) continue;
    std::vector<std::size_t> idx(lists.size(), 0);
    while (true) {
      MentionTuple t{std::vector<int>(lists.size()), unit};
      for (std::size_t k = 0; k < lists.size(); ++k) t.tokens[k] = lists[k][idx[k]];
      out.tuples.push_back(std::move(t));
      std::size_t k = lists.size();
      bool done = false;
      while (true) {
        --k;
        if (++idx[k] < lists[k].size()) break;
        idx[k] = 0;
        if (k == 0) {
          done = true;
          break;
        }
      }
      if (done) break;
    }
  }

  if (cap && out.tuples.size() > *cap) {
    std::sort(out.tuples.begin(), out.tuples.end(),
              [](const MentionTuple& a, const MentionTuple& b) { return a.tokens < b.tokens; });
    out.tuples.resize(*cap);
  }
  return out;
}

void distant_label(std::span<CandidateTuple> candidates, const KnowledgeBase& kb) {
  for (auto& c : candidates) c.label = kb.contains(c.entities) ? 1 : 0;
}

KnowledgeBase project(const KnowledgeBase& kb, std::span<const int> columns) {
  KnowledgeBase out;
  for (const auto& fact : kb) {
    EntityTuple t;
    for (int c : columns) t.push_back(fact.at(c));
    out.insert(std::move(t));
  }
  return out;
}

std::vector<int> projection_columns(const RelationSchema& from, const RelationSchema& to) {
  std::vector<int> cols;
  for (auto type : to.slots) {
    const int c = from.slot_of(type);
    if (c < 0)
      throw DataError("cannot project '" + from.to_string() + "' onto '" + to.to_string() + "'");
    cols.push_back(c);
  }
  return cols;
}

std::vector<CandidateTuple> cap_negatives(std::vector<CandidateTuple> candidates,
                                          std::size_t max_negatives, std::uint64_t seed) {
  std::map<std::string, std::vector<std::size_t>> negatives;
  for (std::size_t k = 0; k < candidates.size(); ++k)
    if (candidates[k].label.value_or(0) == 0) negatives[candidates[k].doc_id].push_back(k);
  std::vector<bool> keep(candidates.size(), true);
  for (auto& [doc_id, idx] : negatives) {
    if (idx.size() <= max_negatives) continue;
    std::mt19937_64 rng(seed ^ stable_hash(doc_id));
    std::shuffle(idx.begin(), idx.end(), rng);
    for (std::size_t k = max_negatives; k < idx.size(); ++k) keep[idx[k]] = false;
  }
  std::vector<CandidateTuple> out;
  for (std::size_t k = 0; k < candidates.size(); ++k)
    if (keep[k]) out.push_back(std::move(candidates[k]));
  return out;
}

std::set<std::string> load_id_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open id list " + path.string());
  std::set<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    ids.insert(line);
  }
  return ids;
}

std::uint64_t stable_hash(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace docre
