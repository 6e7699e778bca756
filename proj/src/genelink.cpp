#include "docre/genelink.hpp"

#include <algorithm>
#include <limits>

#include "docre/errors.hpp"

namespace docre {

namespace {

int utf8_length(std::string_view s) {
  int n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

bool starts_with_folded(std::string_view token, std::string_view prefix) {
  return fold_case(token).starts_with(prefix);
}

// Gene mention index whose span ends right before `token`, within one sentence.
const Mention* gene_ending_before(const AnnotatedDocument& doc, int token) {
  for (const auto& m : doc.mentions)
    if (m.type == EntityType::Gene && m.end() == token &&
        doc.document.coord(m.token_index).sentence == doc.document.coord(token).sentence)
      return &m;
  return nullptr;
}

}  // namespace

std::string_view to_string(AssignmentRule rule) {
  switch (rule) {
    case AssignmentRule::GlobalClosest: return "global_closest";
    case AssignmentRule::Rule4: return "rule4";
    case AssignmentRule::Rule5: return "rule5";
    case AssignmentRule::MostFrequent: return "most_frequent";
  }
  return "?";
}

AssignmentRule parse_assignment_rule(std::string_view name) {
  for (auto r : {AssignmentRule::GlobalClosest, AssignmentRule::Rule4, AssignmentRule::Rule5,
                 AssignmentRule::MostFrequent})
    if (to_string(r) == name) return r;
  throw DataError("unknown assignment rule '" + std::string(name) + "'");
}

std::map<std::string, int> count_pattern_matches(std::span<const AnnotatedDocument> corpus,
                                                 const EntityDictionary& genes,
                                                 const std::string& mutation,
                                                 LinkPattern pattern) {
  std::map<std::string, int> counts;
  for (const auto& doc : corpus) {
    const auto& d = doc.document;
    if (pattern == LinkPattern::SameToken) {
      for (int t = 0; t < d.size(); ++t) {
        const auto& tok = d.token(t);
        if (tok.find('-') == std::string::npos) continue;
        std::vector<std::string_view> pieces;
        std::size_t start = 0;
        while (true) {
          const auto dash = tok.find('-', start);
          pieces.push_back(std::string_view(tok).substr(
              start, dash == std::string::npos ? std::string::npos : dash - start));
          if (dash == std::string::npos) break;
          start = dash + 1;
        }
        bool has_mutation = false;
        for (auto p : pieces) has_mutation |= match_mutation(p) == mutation;
        if (!has_mutation) continue;
        for (auto p : pieces)
          if (auto gene = genes.lookup(p)) ++counts[std::string(*gene)];
      }
      continue;
    }
    const int gap = pattern == LinkPattern::Adjacent ? 0 : 1;
    for (const auto& m : doc.mentions) {
      if (m.type != EntityType::Mutation || m.entity_id != mutation) continue;
      if (match_mutation(d.token(m.token_index)) != mutation) continue;
      const int gene_end = m.token_index - gap;
      if (gene_end <= 0) continue;
      if (gap == 1) {
        const int between = m.token_index - 1;
        if (d.coord(between).sentence != d.coord(m.token_index).sentence) continue;
        if (utf8_length(d.token(between)) != 1) continue;
      }
      if (const Mention* g = gene_ending_before(doc, gene_end)) ++counts[g->entity_id];
    }
  }
  return counts;
}

AugmentResult augment_global_map(std::span<const AnnotatedDocument> corpus,
                                 const EntityDictionary& genes, GeneMutationMap seed_map) {
  AugmentResult out{std::move(seed_map), {}, {}};
  std::set<std::string> mutations;
  for (const auto& doc : corpus)
    for (const auto& m : doc.mentions)
      if (m.type == EntityType::Mutation) mutations.insert(m.entity_id);

  for (const auto& mutation : mutations) {
    for (auto pattern : {LinkPattern::SameToken, LinkPattern::Adjacent, LinkPattern::SingleCharGap}) {
      const auto counts = count_pattern_matches(corpus, genes, mutation, pattern);
      if (counts.empty()) continue;
      // std::map iterates genes in lexicographic order, so max_element keeps
      // the smallest id among ties.
      const auto best = std::max_element(counts.begin(), counts.end(),
                                         [](const auto& a, const auto& b) { return a.second < b.second; });
      out.map[mutation].insert(best->first);
      out.pattern[mutation] = pattern;
      out.added_gene[mutation] = best->first;
      break;
    }
  }
  return out;
}

GeneMutationAssignment assign_in_document(const AnnotatedDocument& doc,
                                          const GeneMutationMap& global_map) {
  const auto& d = doc.document;
  GeneMutationAssignment out;
  out.doc_id = d.id();

  std::vector<const Mention*> genes;
  std::vector<std::string> mutation_order;
  std::map<std::string, std::vector<const Mention*>> mutation_mentions;
  for (const auto& m : doc.mentions) {
    if (m.type == EntityType::Gene) genes.push_back(&m);
    if (m.type == EntityType::Mutation) {
      auto& list = mutation_mentions[m.entity_id];
      if (list.empty()) mutation_order.push_back(m.entity_id);
      list.push_back(&m);
    }
  }
  std::sort(genes.begin(), genes.end(),
            [](const Mention* a, const Mention* b) { return a->token_index < b->token_index; });

  // Earliest gene mention g followed by a token starting with `prefix`, where g
  // shares a unit of `kind` with some mention of the mutation.
  auto pattern_rule = [&](const std::vector<const Mention*>& muts, UnitKind kind,
                          std::string_view prefix) -> const Mention* {
    std::set<int> units;
    for (const auto* m : muts) units.insert(d.unit_of(m->token_index, kind));
    for (const auto* g : genes) {
      const int next = g->end();
      if (next >= d.size()) continue;
      if (d.coord(next).sentence != d.coord(g->token_index).sentence) continue;
      if (!units.contains(d.unit_of(g->token_index, kind))) continue;
      if (starts_with_folded(d.token(next), prefix)) return g;
    }
    return nullptr;
  };

  for (const auto& mutation : mutation_order) {
    const auto& muts = mutation_mentions[mutation];
    if (genes.empty()) {
      out.unassigned.push_back(mutation);
      continue;
    }

    if (auto it = global_map.find(mutation); it != global_map.end()) {
      const Mention* best = nullptr;
      int best_distance = std::numeric_limits<int>::max();
      for (const auto* g : genes) {
        if (!it->second.contains(g->entity_id)) continue;
        for (const auto* m : muts) {
          const int distance = std::abs(g->token_index - m->token_index);
          if (distance < best_distance) {
            best_distance = distance;
            best = g;
          }
        }
      }
      if (best) {
        out.assigned[mutation] = {best->entity_id, AssignmentRule::GlobalClosest};
        continue;
      }
    }
    if (const auto* g = pattern_rule(muts, UnitKind::Sentence, "mut")) {
      out.assigned[mutation] = {g->entity_id, AssignmentRule::Rule4};
      continue;
    }
    if (const auto* g = pattern_rule(muts, UnitKind::Paragraph, "mutation")) {
      out.assigned[mutation] = {g->entity_id, AssignmentRule::Rule5};
      continue;
    }
    std::map<std::string, std::pair<int, int>> freq;  // id -> (count, first position)
    for (const auto* g : genes) {
      auto [it, inserted] = freq.try_emplace(g->entity_id, 0, g->token_index);
      ++it->second.first;
    }
    const auto best = std::max_element(freq.begin(), freq.end(), [](const auto& a, const auto& b) {
      if (a.second.first != b.second.first) return a.second.first < b.second.first;
      return a.second.second > b.second.second;
    });
    out.assigned[mutation] = {best->first, AssignmentRule::MostFrequent};
  }
  return out;
}

std::vector<CandidateTuple> filter(std::span<const CandidateTuple> candidates,
                                   const RelationSchema& schema,
                                   const AssignmentIndex& assignments) {
  const int gene_slot = schema.slot_of(EntityType::Gene);
  const int mutation_slot = schema.slot_of(EntityType::Mutation);
  if (gene_slot < 0 || mutation_slot < 0) return {candidates.begin(), candidates.end()};
  std::vector<CandidateTuple> out;
  for (const auto& c : candidates) {
    auto doc = assignments.find(c.doc_id);
    if (doc == assignments.end()) continue;
    auto it = doc->second.assigned.find(c.entities.at(mutation_slot));
    if (it != doc->second.assigned.end() && it->second.gene == c.entities.at(gene_slot))
      out.push_back(c);
  }
  return out;
}

}  // namespace docre
