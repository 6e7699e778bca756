#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace docre {

enum class UnitKind { Sentence, Paragraph };

std::string_view to_string(UnitKind kind);

struct TokenRange {
  int begin = 0;
  int end = 0;

  int size() const { return end - begin; }
  bool empty() const { return begin == end; }
  bool contains(int token) const { return token >= begin && token < end; }
  bool operator==(const TokenRange&) const = default;
};

struct TokenCoord {
  int paragraph = 0;
  int sentence = 0;
  bool operator==(const TokenCoord&) const = default;
};

struct DiscourseUnit {
  UnitKind kind = UnitKind::Sentence;
  int index = 0;
  TokenRange tokens;
  bool operator==(const DiscourseUnit&) const = default;
};

// Paragraphs of sentences, each sentence a list of tokens.
using TokenizedParagraphs = std::vector<std::vector<std::vector<std::string>>>;

// Untokenized document as it appears in the corpus file.
struct RawDocument {
  std::string doc_id;
  std::vector<std::vector<std::string>> paragraphs;
};

// Immutable tokenized document. Sentence and paragraph indices are global
// (0-based across the document); sentences never span paragraphs.
class Document {
 public:
  Document() = default;
  Document(std::string doc_id, const TokenizedParagraphs& paragraphs);

  const std::string& id() const { return id_; }
  std::span<const std::string> tokens() const { return tokens_; }
  const std::string& token(int i) const { return tokens_.at(i); }
  int size() const { return static_cast<int>(tokens_.size()); }
  const TokenCoord& coord(int token) const { return coords_.at(token); }

  const std::vector<DiscourseUnit>& sentences() const { return sentences_; }
  const std::vector<DiscourseUnit>& paragraphs() const { return paragraphs_; }
  const std::vector<DiscourseUnit>& units(UnitKind kind) const;
  int num_units(UnitKind kind) const { return static_cast<int>(units(kind).size()); }
  // Index of the unit of `kind` holding `token`.
  int unit_of(int token, UnitKind kind) const;
  // Paragraph holding sentence `sentence`.
  int paragraph_of_sentence(int sentence) const { return sentence_paragraph_.at(sentence); }

  TokenizedParagraphs structure() const;

  bool operator==(const Document& other) const;

 private:
  std::string id_;
  std::vector<std::string> tokens_;
  std::vector<TokenCoord> coords_;
  std::vector<DiscourseUnit> sentences_;
  std::vector<DiscourseUnit> paragraphs_;
  std::vector<int> sentence_paragraph_;
};

// Whitespace split, then leading/trailing ASCII punctuation peeled off as
// single-character tokens. Internal punctuation (EGFR-T790M, p.V600E) stays.
std::vector<std::string> tokenize(std::string_view raw_sentence);

Document tokenize_document(const RawDocument& raw);

// Parses one corpus line. `line_number` is 1-based and only used in errors.
RawDocument parse_corpus_line(std::string_view line, std::size_t line_number);

std::vector<Document> ingest(const std::filesystem::path& path);
std::vector<Document> ingest_stream(std::istream& in);

// One corpus JSONL line (no trailing newline); sentences are tokens joined by
// single spaces, so ingest(serialize(d)) == d.
std::string serialize(const Document& doc);
std::string serialize(const RawDocument& doc);

std::vector<DiscourseUnit> units(const Document& doc, UnitKind kind);

}  // namespace docre
