#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "docre/candidates.hpp"
#include "docre/ner.hpp"

namespace docre {

// mutation id -> gene ids. Stored sets are never empty.
using GeneMutationMap = std::map<std::string, std::set<std::string>>;

// Corpus-wide patterns used to augment the global map, in precedence order.
enum class LinkPattern {
  SameToken = 1,      // "EGFR-T790M"
  Adjacent = 2,       // "EGFR T790M"
  SingleCharGap = 3,  // "EGFR - T790M"
};

// In-document assignment rules, in precedence order.
enum class AssignmentRule { GlobalClosest, Rule4, Rule5, MostFrequent };

std::string_view to_string(AssignmentRule rule);
AssignmentRule parse_assignment_rule(std::string_view name);

struct AugmentResult {
  GeneMutationMap map;
  // Pattern that fired for each augmented mutation and the gene it added.
  std::map<std::string, LinkPattern> pattern;
  std::map<std::string, std::string> added_gene;
};

// gene id -> number of matches of `pattern` pairing that gene with `mutation`.
std::map<std::string, int> count_pattern_matches(std::span<const AnnotatedDocument> corpus,
                                                 const EntityDictionary& genes,
                                                 const std::string& mutation, LinkPattern pattern);

// For each mutation seen in the corpus, tries the patterns in order and adds
// the most-matched gene from the first pattern with any match. Ties go to the
// lexicographically smallest gene id.
AugmentResult augment_global_map(std::span<const AnnotatedDocument> corpus,
                                 const EntityDictionary& genes, GeneMutationMap seed_map);

struct GeneAssignment {
  std::string gene;
  AssignmentRule rule = AssignmentRule::GlobalClosest;
  bool operator==(const GeneAssignment&) const = default;
};

struct GeneMutationAssignment {
  std::string doc_id;
  std::map<std::string, GeneAssignment> assigned;
  // Mutations left without a gene (document has no gene mentions).
  std::vector<std::string> unassigned;
};

// Runs on the unmasked token stream; `mentions` are that stream's mentions.
GeneMutationAssignment assign_in_document(const AnnotatedDocument& doc,
                                          const GeneMutationMap& global_map);

using AssignmentIndex = std::map<std::string, GeneMutationAssignment>;

// Keeps candidates whose (gene, mutation) pair matches their document's
// assignment. Schemas without both a gene and a mutation slot pass through.
std::vector<CandidateTuple> filter(std::span<const CandidateTuple> candidates,
                                   const RelationSchema& schema, const AssignmentIndex& assignments);

}  // namespace docre
