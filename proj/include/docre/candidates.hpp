#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "docre/corpus.hpp"
#include "docre/ner.hpp"

namespace docre {

using EntityTuple = std::vector<std::string>;

// Ordered entity-type signature of the relation plus its class count.
struct RelationSchema {
  std::vector<EntityType> slots{EntityType::Drug, EntityType::Gene, EntityType::Mutation};
  int num_classes = 2;

  int arity() const { return static_cast<int>(slots.size()); }
  // Slot position of `type`, or -1.
  int slot_of(EntityType type) const;
  // Every subset of slot positions with size >= 2, ordered by size, then
  // lexicographically. There are 2^n - n - 1 of them.
  std::vector<std::vector<int>> subsets() const;
  void validate() const;

  static RelationSchema ternary() { return {}; }
  // Parses "drug,gene,mutation".
  static RelationSchema parse(std::string_view spec, int num_classes = 2);
  std::string to_string() const;
  bool operator==(const RelationSchema&) const = default;
};

enum class ScaleKind { Sentence, Paragraph, Document };

std::string_view to_string(ScaleKind kind);
ScaleKind parse_scale_kind(std::string_view name);

struct Scale {
  ScaleKind kind = ScaleKind::Document;
  int unit = -1;  // sentence/paragraph index; -1 at document scale
  bool operator==(const Scale&) const = default;
  auto operator<=>(const Scale&) const = default;
};

struct CandidateTuple {
  std::string doc_id;
  EntityTuple entities;
  Scale scale;
  std::optional<int> label;
  bool operator==(const CandidateTuple&) const = default;
};

// One co-occurring mention combination, by token index, within unit `unit`.
struct MentionTuple {
  std::vector<int> tokens;
  int unit = 0;
  bool operator==(const MentionTuple&) const = default;
};

struct MentionTupleSet {
  std::vector<int> subset;
  std::vector<MentionTuple> tuples;
};

using KnowledgeBase = std::set<EntityTuple>;

// Token span covered by `scale` in `doc`.
TokenRange span_of(const Document& doc, const Scale& scale);

// Entity-centric candidates. Sentence/paragraph scale: one candidate per
// (type-signature tuple, unit) co-occurring in that unit. Document scale: one
// per tuple whose entities all appear somewhere in the document.
std::vector<CandidateTuple> generate(const AnnotatedDocument& doc, const RelationSchema& schema,
                                     ScaleKind scale);

// Cross product of the selected entities' mentions inside each `unit_kind`
// unit of the candidate's span. With a cap, the lexicographically earliest
// tuples by token index are kept.
MentionTupleSet mention_tuples(const CandidateTuple& candidate, const AnnotatedDocument& doc,
                               const RelationSchema& schema, std::span<const int> subset,
                               UnitKind unit_kind, std::optional<std::size_t> cap = std::nullopt);

// Positive (1) iff the entity tuple is in the KB, else negative (0).
void distant_label(std::span<CandidateTuple> candidates, const KnowledgeBase& kb);

// Restricts KB facts to the given column positions.
KnowledgeBase project(const KnowledgeBase& kb, std::span<const int> columns);
// Columns of `from` holding each slot type of `to`, in `to` order.
std::vector<int> projection_columns(const RelationSchema& from, const RelationSchema& to);

// Keeps all positives and at most `max_negatives` negatives per document,
// chosen by a seeded shuffle. Input order is otherwise preserved.
std::vector<CandidateTuple> cap_negatives(std::vector<CandidateTuple> candidates,
                                          std::size_t max_negatives, std::uint64_t seed);

// Doc ids listed one per line; used to drop documents from a corpus.
std::set<std::string> load_id_list(const std::filesystem::path& path);

std::uint64_t stable_hash(std::string_view s);

}  // namespace docre
