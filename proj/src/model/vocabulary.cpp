#include "docre/model/vocabulary.hpp"

#include "docre/errors.hpp"

namespace docre::model {

Vocabulary::Vocabulary() { add(kUnknownToken); }

Vocabulary::Vocabulary(const std::vector<std::string>& tokens) {
  if (tokens.empty() || tokens.front() != kUnknownToken)
    throw DataError("vocabulary must start with " + std::string(kUnknownToken));
  for (const auto& t : tokens) {
    if (index_.contains(t)) throw DataError("duplicate vocabulary token '" + t + "'");
    add(t);
  }
}

int Vocabulary::add(std::string_view token) {
  auto [it, inserted] = index_.emplace(std::string(token), size());
  if (inserted) tokens_.emplace_back(token);
  return it->second;
}

int Vocabulary::id(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? kUnknown : it->second;
}

std::vector<int> Vocabulary::ids(std::span<const std::string> tokens) const {
  std::vector<int> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(id(t));
  return out;
}

Vocabulary Vocabulary::build(std::span<const AnnotatedDocument> docs) {
  Vocabulary v;
  for (const auto& d : docs)
    for (const auto& t : d.document.tokens()) v.add(t);
  return v;
}

}  // namespace docre::model
