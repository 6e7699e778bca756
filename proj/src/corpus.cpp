#include "docre/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

#include "docre/errors.hpp"

namespace docre {

namespace {

bool is_ascii_punct(char c) {
  auto u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u);
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

std::string_view to_string(UnitKind kind) {
  return kind == UnitKind::Sentence ? "sentence" : "paragraph";
}

Document::Document(std::string doc_id, const TokenizedParagraphs& paragraphs)
    : id_(std::move(doc_id)) {
  int sentence_index = 0;
  for (int p = 0; p < static_cast<int>(paragraphs.size()); ++p) {
    const int paragraph_begin = size();
    for (const auto& sentence : paragraphs[p]) {
      const int sentence_begin = size();
      for (const auto& tok : sentence) {
        tokens_.push_back(tok);
        coords_.push_back({p, sentence_index});
      }
      sentences_.push_back({UnitKind::Sentence, sentence_index, {sentence_begin, size()}});
      sentence_paragraph_.push_back(p);
      ++sentence_index;
    }
    paragraphs_.push_back({UnitKind::Paragraph, p, {paragraph_begin, size()}});
  }
}

const std::vector<DiscourseUnit>& Document::units(UnitKind kind) const {
  return kind == UnitKind::Sentence ? sentences_ : paragraphs_;
}

int Document::unit_of(int token, UnitKind kind) const {
  const auto& c = coord(token);
  return kind == UnitKind::Sentence ? c.sentence : c.paragraph;
}

TokenizedParagraphs Document::structure() const {
  TokenizedParagraphs out(paragraphs_.size());
  for (const auto& s : sentences_) {
    auto& para = out[sentence_paragraph_[s.index]];
    para.emplace_back(tokens_.begin() + s.tokens.begin, tokens_.begin() + s.tokens.end);
  }
  return out;
}

bool Document::operator==(const Document& other) const {
  return id_ == other.id_ && tokens_ == other.tokens_ && coords_ == other.coords_ &&
         sentences_ == other.sentences_ && paragraphs_ == other.paragraphs_;
}

std::vector<std::string> tokenize(std::string_view raw) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < raw.size()) {
    while (i < raw.size() && is_space(raw[i])) ++i;
    std::size_t j = i;
    while (j < raw.size() && !is_space(raw[j])) ++j;
    if (j == i) break;
    std::string_view chunk = raw.substr(i, j - i);
    i = j;

    std::size_t lead = 0;
    while (lead < chunk.size() && is_ascii_punct(chunk[lead])) ++lead;
    if (lead == chunk.size()) {
      for (char c : chunk) out.emplace_back(1, c);
      continue;
    }
    std::size_t trail = chunk.size();
    while (trail > lead && is_ascii_punct(chunk[trail - 1])) --trail;
    for (std::size_t k = 0; k < lead; ++k) out.emplace_back(1, chunk[k]);
    out.emplace_back(chunk.substr(lead, trail - lead));
    for (std::size_t k = trail; k < chunk.size(); ++k) out.emplace_back(1, chunk[k]);
  }
  return out;
}

Document tokenize_document(const RawDocument& raw) {
  TokenizedParagraphs paragraphs;
  paragraphs.reserve(raw.paragraphs.size());
  for (const auto& para : raw.paragraphs) {
    auto& out = paragraphs.emplace_back();
    for (const auto& sentence : para) out.push_back(tokenize(sentence));
  }
  return Document(raw.doc_id, paragraphs);
}

RawDocument parse_corpus_line(std::string_view line, std::size_t line_number) {
  auto fail = [&](const std::string& what) {
    return DataError("corpus line " + std::to_string(line_number) + ": " + what);
  };
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw fail(std::string("malformed JSON (") + e.what() + ")");
  }
  if (!j.is_object()) throw fail("expected a JSON object");
  if (!j.contains("doc_id") || !j["doc_id"].is_string()) throw fail("missing string field 'doc_id'");
  if (!j.contains("paragraphs") || !j["paragraphs"].is_array())
    throw fail("missing array field 'paragraphs'");

  RawDocument doc;
  doc.doc_id = j["doc_id"].get<std::string>();
  if (doc.doc_id.empty()) throw fail("empty 'doc_id'");
  for (const auto& para : j["paragraphs"]) {
    if (!para.is_array()) throw fail("paragraph must be an array of sentence strings");
    auto& out = doc.paragraphs.emplace_back();
    for (const auto& sentence : para) {
      if (!sentence.is_string()) throw fail("sentence must be a string");
      out.push_back(sentence.get<std::string>());
    }
  }
  return doc;
}

std::vector<Document> ingest_stream(std::istream& in) {
  std::vector<Document> docs;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (std::all_of(line.begin(), line.end(), is_space)) continue;
    RawDocument raw = parse_corpus_line(line, line_number);
    if (!seen.insert(raw.doc_id).second)
      throw DataError("corpus line " + std::to_string(line_number) + ": duplicate doc_id '" +
                      raw.doc_id + "'");
    docs.push_back(tokenize_document(raw));
  }
  return docs;
}

std::vector<Document> ingest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file " + path.string());
  return ingest_stream(in);
}

std::string serialize(const RawDocument& doc) {
  nlohmann::json j;
  j["doc_id"] = doc.doc_id;
  j["paragraphs"] = doc.paragraphs;
  return j.dump();
}

std::string serialize(const Document& doc) {
  RawDocument raw{doc.id(), {}};
  for (const auto& para : doc.structure()) {
    auto& out = raw.paragraphs.emplace_back();
    for (const auto& sentence : para) {
      std::string joined;
      for (std::size_t k = 0; k < sentence.size(); ++k) {
        if (k) joined += ' ';
        joined += sentence[k];
      }
      out.push_back(std::move(joined));
    }
  }
  return serialize(raw);
}

std::vector<DiscourseUnit> units(const Document& doc, UnitKind kind) { return doc.units(kind); }

}  // namespace docre
