#pragma once

#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "docre/candidates.hpp"
#include "docre/ensemble.hpp"
#include "docre/eval.hpp"
#include "docre/genelink.hpp"
#include "docre/ner.hpp"

namespace docre {

// Output of `preprocess`: the tokenized document with its mentions, and the
// masked stream the model reads.
struct ProcessedDocument {
  AnnotatedDocument original;
  AnnotatedDocument masked;
};

// Calls `fn(json, line_number)` for every non-blank line; parse errors become
// DataError naming path and line.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const nlohmann::json&, std::size_t)>& fn);

// Writes `text` to `path`, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

// Rows of a TAB-separated file; blank lines and `#` comments skipped.
std::vector<std::vector<std::string>> read_tsv(const std::filesystem::path& path,
                                               std::size_t min_columns);

nlohmann::json to_json(const Mention& m);
Mention mention_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ProcessedDocument& d);
ProcessedDocument processed_from_json(const nlohmann::json& j);
void write_processed(const std::filesystem::path& path, std::span<const ProcessedDocument> docs);
std::vector<ProcessedDocument> read_processed(const std::filesystem::path& path);

nlohmann::json to_json(const CandidateTuple& c);
CandidateTuple candidate_from_json(const nlohmann::json& j);
void write_candidates(const std::filesystem::path& path, std::span<const CandidateTuple> cands);
std::vector<CandidateTuple> read_candidates(const std::filesystem::path& path);

nlohmann::json to_json(const Prediction& p);
Prediction prediction_from_json(const nlohmann::json& j);
void write_predictions(const std::filesystem::path& path, std::span<const Prediction> preds);
std::vector<Prediction> read_predictions(const std::filesystem::path& path);

nlohmann::json to_json(const GeneMutationAssignment& a);
GeneMutationAssignment assignment_from_json(const nlohmann::json& j);
void write_assignments(const std::filesystem::path& path, const AssignmentIndex& assignments);
AssignmentIndex read_assignments(const std::filesystem::path& path);

// `doc_id<TAB>e1<TAB>...<TAB>en`
GoldSet read_gold(const std::filesystem::path& path);
std::string format_gold(const GoldSet& gold);
// `e1<TAB>...<TAB>en`
KnowledgeBase read_kb(const std::filesystem::path& path);
std::string format_kb(const KnowledgeBase& kb);
// `mutation_id<TAB>gene_id`
GeneMutationMap read_seed_map(const std::filesystem::path& path);
std::string format_seed_map(const GeneMutationMap& map);
std::string format_dictionary(std::span<const std::pair<std::string, std::string>> rows);

nlohmann::json to_json(const EvalReport& r);
std::string format_report_table(const EvalReport& r);
nlohmann::json to_json(const ScopeBreakdown& b);
std::string format_pr_curve(std::span<const PrPoint> curve);

}  // namespace docre
