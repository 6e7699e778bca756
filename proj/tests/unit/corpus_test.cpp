#include <doctest.h>

#include <random>
#include <sstream>

#include "docre/corpus.hpp"
#include "docre/errors.hpp"

using namespace docre;

namespace {

Document two_paragraph_doc() {
  return tokenize_document({"d1", {{"A b .", "C d ."}, {"E f ."}}});
}

void check_partition(const Document& doc, UnitKind kind) {
  int next = 0;
  const auto& us = doc.units(kind);
  for (std::size_t i = 0; i < us.size(); ++i) {
    CHECK(us[i].index == int(i));
    CHECK(us[i].kind == kind);
    CHECK(us[i].tokens.begin == next);
    next = us[i].tokens.end;
  }
  CHECK(next == doc.size());
}

}  // namespace

TEST_CASE("tokenize peels edge punctuation and keeps internal hyphens") {
  CHECK(tokenize("EGFR-T790M mutation.") == std::vector<std::string>{"EGFR-T790M", "mutation", "."});
  CHECK(tokenize("").empty());
  CHECK(tokenize("a  b") == std::vector<std::string>{"a", "b"});
  CHECK(tokenize("(p.V600E),") == std::vector<std::string>{"(", "p.V600E", ")", ","});
  CHECK(tokenize("EGFR - T790M") == std::vector<std::string>{"EGFR", "-", "T790M"});
  CHECK(tokenize("...") == std::vector<std::string>{".", ".", "."});
}

TEST_CASE("tokenize is idempotent on its own output") {
  std::mt19937 rng(3);
  const std::string alphabet = "ab-./,;()  X1";
  for (int trial = 0; trial < 300; ++trial) {
    std::string s;
    const int len = rng() % 25;
    for (int i = 0; i < len; ++i) s += alphabet[rng() % alphabet.size()];
    const auto once = tokenize(s);
    std::string joined;
    for (std::size_t i = 0; i < once.size(); ++i) joined += (i ? " " : "") + once[i];
    CHECK(tokenize(joined) == once);
  }
}

TEST_CASE("ingest maps paragraphs and sentences") {
  const auto doc = two_paragraph_doc();
  CHECK(doc.paragraphs().size() == 2);
  CHECK(doc.sentences().size() == 3);
  CHECK(units(doc, UnitKind::Sentence).size() == 3);
  CHECK(units(doc, UnitKind::Paragraph).size() == 2);
  CHECK(doc.size() == 9);
  CHECK(doc.coord(6) == TokenCoord{1, 2});
  CHECK(doc.unit_of(4, UnitKind::Sentence) == 1);
  CHECK(doc.unit_of(4, UnitKind::Paragraph) == 0);
  CHECK(doc.paragraph_of_sentence(2) == 1);
  check_partition(doc, UnitKind::Sentence);
  check_partition(doc, UnitKind::Paragraph);
}

TEST_CASE("empty document has no units") {
  const auto doc = tokenize_document({"e", {}});
  CHECK(doc.size() == 0);
  CHECK(units(doc, UnitKind::Sentence).empty());
  CHECK(units(doc, UnitKind::Paragraph).empty());
}

TEST_CASE("corpus line errors") {
  CHECK_THROWS_AS(parse_corpus_line(R"({"paragraphs": []})", 4), DataError);
  try {
    parse_corpus_line("{not json", 17);
    FAIL("expected a parse error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("17") != std::string::npos);
  }
  std::istringstream dup(R"({"doc_id":"a","paragraphs":[]})" "\n" R"({"doc_id":"a","paragraphs":[]})" "\n");
  CHECK_THROWS_AS(ingest_stream(dup), DataError);
}

TEST_CASE("ingest of serialize is identity") {
  std::mt19937 rng(11);
  const std::vector<std::string> words{"x", "EGFR-T790M", "gefitinib", "(a)", "b.", "p.V600E", "-"};
  for (int trial = 0; trial < 100; ++trial) {
    RawDocument raw{"doc" + std::to_string(trial), {}};
    const int paragraphs = rng() % 4;
    for (int p = 0; p < paragraphs; ++p) {
      raw.paragraphs.emplace_back();
      const int sentences = 1 + rng() % 3;
      for (int s = 0; s < sentences; ++s) {
        std::string sent;
        const int n = 1 + rng() % 6;
        for (int w = 0; w < n; ++w) sent += words[rng() % words.size()] + " ";
        raw.paragraphs.back().push_back(sent);
      }
    }
    const auto doc = tokenize_document(raw);
    std::istringstream in(serialize(doc) + "\n");
    const auto back = ingest_stream(in);
    REQUIRE(back.size() == 1);
    CHECK(back.front() == doc);
    check_partition(back.front(), UnitKind::Sentence);
    check_partition(back.front(), UnitKind::Paragraph);
  }
}
