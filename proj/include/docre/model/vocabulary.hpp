#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "docre/ner.hpp"

namespace docre::model {

// Token <-> row id. Id 0 is the unknown-token row.
class Vocabulary {
 public:
  static constexpr int kUnknown = 0;
  static constexpr std::string_view kUnknownToken = "<unk>";

  Vocabulary();
  explicit Vocabulary(const std::vector<std::string>& tokens);

  int add(std::string_view token);
  int id(std::string_view token) const;
  std::vector<int> ids(std::span<const std::string> tokens) const;
  int size() const { return static_cast<int>(tokens_.size()); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  // Every token of the (masked) training documents, in first-seen order.
  static Vocabulary build(std::span<const AnnotatedDocument> docs);

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace docre::model
