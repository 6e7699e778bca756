#include "docre/ner.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <regex>

#include "docre/errors.hpp"

namespace docre {

std::string_view to_string(EntityType type) {
  switch (type) {
    case EntityType::Drug: return "drug";
    case EntityType::Gene: return "gene";
    case EntityType::Mutation: return "mutation";
  }
  return "?";
}

EntityType parse_entity_type(std::string_view name) {
  const std::string n = fold_case(name);
  if (n == "drug") return EntityType::Drug;
  if (n == "gene") return EntityType::Gene;
  if (n == "mutation") return EntityType::Mutation;
  throw DataError("unknown entity type '" + std::string(name) + "'");
}

std::string_view dummy_token(EntityType type) {
  switch (type) {
    case EntityType::Drug: return "DRUG_X";
    case EntityType::Gene: return "GENE_X";
    case EntityType::Mutation: return "MUT_X";
  }
  return "UNK_X";
}

std::string fold_case(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

void EntityDictionary::add(std::string_view surface, std::string_view canonical_id) {
  if (canonical_id.empty()) throw DataError("dictionary entry with empty canonical id");
  const auto words = tokenize(surface);
  if (words.empty()) throw DataError("dictionary entry with empty surface form");
  std::string key;
  for (std::size_t k = 0; k < words.size(); ++k) {
    if (k) key += ' ';
    key += fold_case(words[k]);
  }
  auto [it, inserted] = entries_.emplace(key, std::string(canonical_id));
  if (!inserted && it->second != canonical_id)
    throw DataError("surface form '" + std::string(surface) + "' maps to both '" + it->second +
                    "' and '" + std::string(canonical_id) + "'");
  max_tokens_ = std::max(max_tokens_, static_cast<int>(words.size()));
}

std::optional<std::string_view> EntityDictionary::lookup(std::string_view surface) const {
  auto it = entries_.find(fold_case(surface));
  if (it == entries_.end()) return std::nullopt;
  return std::string_view(it->second);
}

EntityDictionary EntityDictionary::load(const std::filesystem::path& path, EntityType type) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dictionary " + path.string());
  EntityDictionary dict(type);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
      throw DataError(path.string() + ":" + std::to_string(line_number) +
                      ": expected 'surface<TAB>canonical_id'");
    try {
      dict.add(std::string_view(line).substr(0, tab), std::string_view(line).substr(tab + 1));
    } catch (const DataError& e) {
      throw DataError(path.string() + ":" + std::to_string(line_number) + ": " + e.what());
    }
  }
  return dict;
}

std::optional<std::string> match_mutation(std::string_view token) {
  static const std::regex pattern(
      "(?:p\\.)?([ACDEFGHIKLMNPQRSTVWY])([0-9]{1,4})([ACDEFGHIKLMNPQRSTVWY])");
  std::cmatch m;
  if (!std::regex_match(token.data(), token.data() + token.size(), m, pattern)) return std::nullopt;
  return m[1].str() + m[2].str() + m[3].str();
}

std::optional<std::string> find_mutation_in_token(std::string_view token) {
  if (auto whole = match_mutation(token)) return whole;
  if (token.find('-') == std::string_view::npos) return std::nullopt;
  std::size_t start = 0;
  while (start <= token.size()) {
    const auto dash = token.find('-', start);
    const auto piece = token.substr(start, dash == std::string_view::npos ? std::string_view::npos
                                                                          : dash - start);
    if (auto hit = match_mutation(piece)) return hit;
    if (dash == std::string_view::npos) break;
    start = dash + 1;
  }
  return std::nullopt;
}

std::vector<Mention> find_mutations(const Document& doc) {
  std::vector<Mention> out;
  for (int t = 0; t < doc.size(); ++t) {
    if (auto id = find_mutation_in_token(doc.token(t))) {
      const auto& c = doc.coord(t);
      out.push_back({*id, EntityType::Mutation, t, 1, c.sentence, c.paragraph});
    }
  }
  return out;
}

std::vector<Mention> find_by_dictionary(const Document& doc, const EntityDictionary& dict,
                                        int max_ngram) {
  std::vector<Mention> out;
  const int longest = std::min(max_ngram, dict.max_tokens());
  for (const auto& sentence : doc.sentences()) {
    int t = sentence.tokens.begin;
    while (t < sentence.tokens.end) {
      bool matched = false;
      for (int n = std::min(longest, sentence.tokens.end - t); n >= 1; --n) {
        std::string key;
        for (int k = 0; k < n; ++k) {
          if (k) key += ' ';
          key += doc.token(t + k);
        }
        if (auto id = dict.lookup(key)) {
          const auto& c = doc.coord(t);
          out.push_back({std::string(*id), dict.type(), t, n, c.sentence, c.paragraph});
          t += n;
          matched = true;
          break;
        }
      }
      if (!matched) ++t;
    }
  }
  return out;
}

std::vector<Mention> resolve_overlaps(std::vector<Mention> mentions) {
  std::stable_sort(mentions.begin(), mentions.end(), [](const Mention& a, const Mention& b) {
    if (a.token_index != b.token_index) return a.token_index < b.token_index;
    return a.token_count > b.token_count;
  });
  std::vector<Mention> kept;
  int covered_until = -1;
  for (auto& m : mentions) {
    if (m.token_index < covered_until) {
      const auto& winner = kept.back();
      std::clog << "[ner] dropping " << to_string(m.type) << " mention '" << m.entity_id
                << "' at token " << m.token_index << " overlapping " << to_string(winner.type)
                << " '" << winner.entity_id << "'\n";
      continue;
    }
    covered_until = m.end();
    kept.push_back(std::move(m));
  }
  return kept;
}

std::vector<Mention> detect_mentions(const Document& doc, const EntityDictionary& drugs,
                                     const EntityDictionary& genes) {
  auto all = find_mutations(doc);
  auto d = find_by_dictionary(doc, drugs);
  auto g = find_by_dictionary(doc, genes);
  all.insert(all.end(), d.begin(), d.end());
  all.insert(all.end(), g.begin(), g.end());
  return resolve_overlaps(std::move(all));
}

AnnotatedDocument mask(const Document& doc, std::span<const Mention> input) {
  std::vector<Mention> mentions(input.begin(), input.end());
  bool overlapping = false;
  {
    auto sorted = mentions;
    std::sort(sorted.begin(), sorted.end(),
              [](const Mention& a, const Mention& b) { return a.token_index < b.token_index; });
    for (std::size_t k = 1; k < sorted.size(); ++k)
      overlapping |= sorted[k].token_index < sorted[k - 1].end();
  }
  mentions = resolve_overlaps(std::move(mentions));
  if (overlapping) std::clog << "[ner] resolved overlapping mentions in " << doc.id() << "\n";

  std::vector<int> starts_at(doc.size(), -1);
  for (std::size_t k = 0; k < mentions.size(); ++k) starts_at[mentions[k].token_index] = int(k);

  TokenizedParagraphs out(doc.paragraphs().size());
  std::vector<Mention> remapped;
  int new_index = 0;
  for (const auto& sentence : doc.sentences()) {
    auto& out_sentence = out[doc.paragraph_of_sentence(sentence.index)].emplace_back();
    int t = sentence.tokens.begin;
    while (t < sentence.tokens.end) {
      if (starts_at[t] >= 0) {
        const Mention& original = mentions[starts_at[t]];
        Mention m = original;
        out_sentence.emplace_back(dummy_token(m.type));
        m.token_index = new_index;
        m.token_count = 1;
        remapped.push_back(std::move(m));
        t += original.token_count;
      } else {
        out_sentence.push_back(doc.token(t));
        ++t;
      }
      ++new_index;
    }
  }
  return {Document(doc.id(), out), std::move(remapped)};
}

}  // namespace docre
