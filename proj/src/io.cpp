#include "docre/io.hpp"

#include <fstream>
#include <sstream>

#include "docre/errors.hpp"

namespace docre {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <typename T>
std::string jsonl(std::span<const T> items) {
  std::string out;
  for (const auto& item : items) {
    out += to_json(item).dump();
    out += '\n';
  }
  return out;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

}  // namespace

void for_each_jsonl(const fs::path& path, const std::function<void(const json&, std::size_t)>& fn) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      fn(json::parse(line), n);
    } catch (const json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(n) + ": " + e.what());
    } catch (const DataError& e) {
      throw DataError(path.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  }
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("write failed: " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_tsv(const fs::path& path, std::size_t min_columns) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto cols = split_tabs(line);
    if (cols.size() < min_columns)
      throw DataError(path.string() + ":" + std::to_string(n) + ": expected " +
                      std::to_string(min_columns) + " tab-separated columns");
    for (const auto& c : cols)
      if (c.empty()) throw DataError(path.string() + ":" + std::to_string(n) + ": empty column");
    rows.push_back(std::move(cols));
  }
  return rows;
}

json to_json(const Mention& m) {
  return {{"id", m.entity_id},       {"type", to_string(m.type)},
          {"token", m.token_index},  {"count", m.token_count},
          {"sentence", m.sentence_index}, {"paragraph", m.paragraph_index}};
}

Mention mention_from_json(const json& j) {
  Mention m;
  m.entity_id = j.at("id").get<std::string>();
  m.type = parse_entity_type(j.at("type").get<std::string>());
  m.token_index = j.at("token").get<int>();
  m.token_count = j.value("count", 1);
  m.sentence_index = j.at("sentence").get<int>();
  m.paragraph_index = j.at("paragraph").get<int>();
  return m;
}

namespace {

json annotated_json(const AnnotatedDocument& d) {
  json mentions = json::array();
  for (const auto& m : d.mentions) mentions.push_back(to_json(m));
  return {{"paragraphs", d.document.structure()}, {"mentions", mentions}};
}

AnnotatedDocument annotated_from_json(const std::string& id, const json& j) {
  AnnotatedDocument d;
  d.document = Document(id, j.at("paragraphs").get<TokenizedParagraphs>());
  for (const auto& m : j.at("mentions")) {
    d.mentions.push_back(mention_from_json(m));
    const auto& back = d.mentions.back();
    if (back.token_index < 0 || back.end() > d.document.size())
      throw DataError("mention outside document " + id);
    const auto& c = d.document.coord(back.token_index);
    if (c.sentence != back.sentence_index || c.paragraph != back.paragraph_index)
      throw DataError("mention coordinates disagree with document " + id);
  }
  return d;
}

}  // namespace

json to_json(const ProcessedDocument& d) {
  return {{"doc_id", d.original.document.id()},
          {"original", annotated_json(d.original)},
          {"masked", annotated_json(d.masked)}};
}

ProcessedDocument processed_from_json(const json& j) {
  const auto id = j.at("doc_id").get<std::string>();
  ProcessedDocument d{annotated_from_json(id, j.at("original")), annotated_from_json(id, j.at("masked"))};
  if (d.original.mentions.size() != d.masked.mentions.size())
    throw DataError("mention count differs between original and masked " + id);
  return d;
}

void write_processed(const fs::path& path, std::span<const ProcessedDocument> docs) {
  write_text(path, jsonl(docs));
}

std::vector<ProcessedDocument> read_processed(const fs::path& path) {
  std::vector<ProcessedDocument> out;
  std::set<std::string> ids;
  for_each_jsonl(path, [&](const json& j, std::size_t) {
    out.push_back(processed_from_json(j));
    if (!ids.insert(out.back().original.document.id()).second)
      throw DataError("duplicate doc_id " + out.back().original.document.id());
  });
  return out;
}

json to_json(const CandidateTuple& c) {
  json j = {{"doc_id", c.doc_id},
            {"entities", c.entities},
            {"scale", to_string(c.scale.kind)},
            {"unit", c.scale.unit}};
  j["label"] = c.label ? json(*c.label) : json(nullptr);
  return j;
}

CandidateTuple candidate_from_json(const json& j) {
  CandidateTuple c;
  c.doc_id = j.at("doc_id").get<std::string>();
  c.entities = j.at("entities").get<EntityTuple>();
  c.scale.kind = parse_scale_kind(j.at("scale").get<std::string>());
  c.scale.unit = j.value("unit", -1);
  if (j.contains("label") && !j.at("label").is_null()) c.label = j.at("label").get<int>();
  return c;
}

void write_candidates(const fs::path& path, std::span<const CandidateTuple> cands) {
  write_text(path, jsonl(cands));
}

std::vector<CandidateTuple> read_candidates(const fs::path& path) {
  std::vector<CandidateTuple> out;
  for_each_jsonl(path, [&](const json& j, std::size_t) { out.push_back(candidate_from_json(j)); });
  return out;
}

json to_json(const Prediction& p) {
  return {{"doc_id", p.doc_id}, {"entities", p.entities}, {"p", p.p},
          {"variant", p.variant}, {"units", p.units}};
}

Prediction prediction_from_json(const json& j) {
  Prediction p;
  p.doc_id = j.at("doc_id").get<std::string>();
  p.entities = j.at("entities").get<EntityTuple>();
  p.p = j.at("p").get<double>();
  if (!(p.p >= 0.0 && p.p <= 1.0)) throw DataError("probability outside [0, 1]");
  p.variant = j.value("variant", std::string{});
  p.units = j.value("units", std::vector<int>{});
  return p;
}

void write_predictions(const fs::path& path, std::span<const Prediction> preds) {
  write_text(path, jsonl(preds));
}

std::vector<Prediction> read_predictions(const fs::path& path) {
  std::vector<Prediction> out;
  for_each_jsonl(path, [&](const json& j, std::size_t) { out.push_back(prediction_from_json(j)); });
  return out;
}

json to_json(const GeneMutationAssignment& a) {
  json assigned = json::object();
  for (const auto& [m, g] : a.assigned) assigned[m] = {{"gene", g.gene}, {"rule", to_string(g.rule)}};
  return {{"doc_id", a.doc_id}, {"assigned", assigned}, {"unassigned", a.unassigned}};
}

GeneMutationAssignment assignment_from_json(const json& j) {
  GeneMutationAssignment a;
  a.doc_id = j.at("doc_id").get<std::string>();
  for (const auto& [m, g] : j.at("assigned").items())
    a.assigned[m] = {g.at("gene").get<std::string>(),
                     parse_assignment_rule(g.at("rule").get<std::string>())};
  a.unassigned = j.value("unassigned", std::vector<std::string>{});
  return a;
}

void write_assignments(const fs::path& path, const AssignmentIndex& assignments) {
  std::string out;
  for (const auto& [id, a] : assignments) out += to_json(a).dump() + "\n";
  write_text(path, out);
}

AssignmentIndex read_assignments(const fs::path& path) {
  AssignmentIndex out;
  for_each_jsonl(path, [&](const json& j, std::size_t) {
    auto a = assignment_from_json(j);
    auto id = a.doc_id;
    if (!out.emplace(id, std::move(a)).second) throw DataError("duplicate doc_id " + id);
  });
  return out;
}

GoldSet read_gold(const fs::path& path) {
  GoldSet gold;
  for (auto& row : read_tsv(path, 3)) {
    const auto doc = row.front();
    gold[doc].insert(EntityTuple(row.begin() + 1, row.end()));
  }
  return gold;
}

std::string format_gold(const GoldSet& gold) {
  std::string out;
  for (const auto& [doc, facts] : gold)
    for (const auto& f : facts) {
      out += doc;
      for (const auto& e : f) out += "\t" + e;
      out += "\n";
    }
  return out;
}

KnowledgeBase read_kb(const fs::path& path) {
  KnowledgeBase kb;
  std::size_t arity = 0;
  for (auto& row : read_tsv(path, 2)) {
    if (arity == 0) arity = row.size();
    if (row.size() != arity) throw DataError(path.string() + ": inconsistent KB arity");
    kb.insert(row);
  }
  return kb;
}

std::string format_kb(const KnowledgeBase& kb) {
  std::string out;
  for (const auto& f : kb) {
    for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "\t" : "") + f[i];
    out += "\n";
  }
  return out;
}

GeneMutationMap read_seed_map(const fs::path& path) {
  GeneMutationMap map;
  for (auto& row : read_tsv(path, 2)) map[row[0]].insert(row[1]);
  return map;
}

std::string format_seed_map(const GeneMutationMap& map) {
  std::string out;
  for (const auto& [m, genes] : map)
    for (const auto& g : genes) out += m + "\t" + g + "\n";
  return out;
}

std::string format_dictionary(std::span<const std::pair<std::string, std::string>> rows) {
  std::string out;
  for (const auto& [surface, id] : rows) out += surface + "\t" + id + "\n";
  return out;
}

json to_json(const EvalReport& r) {
  const auto& m = r.at_threshold;
  return {{"auc", r.auc},
          {"max_recall", r.max_recall},
          {"threshold", m.threshold},
          {"precision", m.precision},
          {"recall", m.recall},
          {"f1", m.f1},
          {"tp", m.tp},
          {"fp", m.fp},
          {"fn", m.fn},
          {"num_predictions", r.num_predictions},
          {"num_gold", r.num_gold}};
}

std::string format_report_table(const EvalReport& r) {
  const auto& m = r.at_threshold;
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "%-12s %8s\n%-12s %8.4f\n%-12s %8.4f\n%-12s %8.4f\n%-12s %8.4f\n%-12s %8.4f\n"
                "%-12s %8.4f\n%-12s %8zu\n%-12s %8zu\n%-12s %8zu\n",
                "metric", "value", "auc", r.auc, "max_recall", r.max_recall, "threshold",
                m.threshold, "precision", m.precision, "recall", m.recall, "f1", m.f1, "tp", m.tp,
                "fp", m.fp, "fn", m.fn);
  return buf;
}

json to_json(const ScopeBreakdown& b) {
  return {{std::string(to_string(CoScope::Sentence)), b.sentence},
          {std::string(to_string(CoScope::Paragraph)), b.paragraph},
          {std::string(to_string(CoScope::CrossParagraph)), b.cross_paragraph},
          {"total", b.total()}};
}

std::string format_pr_curve(std::span<const PrPoint> curve) {
  std::string out = "threshold,precision,recall\n";
  char buf[96];
  for (const auto& p : curve) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.threshold, p.precision, p.recall);
    out += buf;
  }
  return out;
}

}  // namespace docre
