#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "docre/candidates.hpp"
#include "docre/corpus.hpp"
#include "docre/ensemble.hpp"
#include "docre/errors.hpp"
#include "docre/eval.hpp"
#include "docre/io.hpp"
#include "docre/manifest.hpp"
#include "docre/model/checkpoint.hpp"
#include "docre/pipeline.hpp"
#include "docre/synthgen.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace docre;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Values of every option of `sub`, given or defaulted, keyed by long name.
json resolved_options(const CLI::App* sub) {
  json out = json::object();
  for (const auto* opt : sub->get_options()) {
    const auto name = opt->get_single_name();
    if (name.empty() || name == "help" || name == "config") continue;
    if (opt->count()) {
      const auto& r = opt->results();
      out[name] = r.size() == 1 && opt->get_expected_max() <= 1 ? json(r.front()) : json(r);
    } else {
      out[name] = opt->get_default_str();
    }
  }
  return out;
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

// Splices values from a flat JSON config file into the argument list for
// every key not already given on the command line.
std::vector<std::string> apply_config_file(CLI::App& app, std::vector<std::string> args) {
  auto it = std::find_if(args.begin(), args.end(), [](const std::string& a) {
    return a == "--config" || a.rfind("--config=", 0) == 0;
  });
  if (it == args.end()) return args;
  std::string path;
  if (*it == "--config") {
    if (it + 1 == args.end()) throw UsageError("--config needs a file");
    path = *(it + 1);
  } else {
    path = it->substr(9);
  }
  if (args.size() < 2) throw UsageError("--config given without a subcommand");
  CLI::App* sub = nullptr;
  try {
    sub = app.get_subcommand(args[1]);
  } catch (const CLI::OptionNotFound&) {
    throw UsageError("unknown subcommand '" + args[1] + "'");
  }
  json cfg;
  try {
    cfg = json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw UsageError("config " + path + ": " + e.what());
  } catch (const DataError& e) {
    throw UsageError(e.what());
  }
  if (!cfg.is_object()) throw UsageError("config " + path + " must be a flat JSON object");
  for (const auto& [raw_key, value] : cfg.items()) {
    std::string key = raw_key;
    std::replace(key.begin(), key.end(), '_', '-');
    const auto flag = "--" + key;
    const auto* opt = sub->get_option_no_throw(flag);
    if (!opt) throw UsageError("unknown config key '" + raw_key + "' for " + args[1]);
    if (has_flag(args, flag)) continue;
    std::vector<std::string> values;
    if (value.is_array()) {
      for (const auto& v : value) values.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    } else if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
      continue;
    } else {
      values.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
    args.push_back(flag);
    args.insert(args.end(), values.begin(), values.end());
  }
  return args;
}

std::vector<Document> read_documents(const fs::path& path) { return ingest(path); }

struct ModelFlags {
  model::ModelConfig config;
  std::string aggregator = "logsumexp";
  std::optional<std::size_t> cap;
};

void add_model_flags(CLI::App* sub, ModelFlags& f) {
  auto& c = f.config;
  sub->add_option("--d-word", c.d_word, "word vector size")->check(CLI::PositiveNumber);
  sub->add_option("--d-unit-index", c.d_unit_index, "unit index embedding size")
      ->check(CLI::PositiveNumber);
  sub->add_option("--lstm-hidden", c.lstm_hidden, "LSTM state size per direction")
      ->check(CLI::PositiveNumber);
  sub->add_option("--d-mention", c.d_mention, "mention representation size")
      ->check(CLI::PositiveNumber);
  sub->add_option("--ffn-hidden", c.ffn_hidden, "classifier hidden size")->check(CLI::PositiveNumber);
  sub->add_option("--aggregator", f.aggregator, "logsumexp | max")
      ->check(CLI::IsMember({"logsumexp", "lse", "max"}));
  sub->add_option("--learning-rate", c.learning_rate, "Adam step size")->check(CLI::NonNegativeNumber);
  sub->add_option("--epochs", c.epochs, "training epochs")->check(CLI::NonNegativeNumber);
  sub->add_option("--mention-tuple-cap", f.cap, "max mention tuples per subrelation");
  sub->add_option("--embedding-init", c.embedding_init, "word vector init half-width");
  sub->add_option("--precision", c.precision, "training arithmetic bits")
      ->check(CLI::IsMember({32, 64}));
  sub->add_option("--patience", c.patience, "early stopping patience in epochs (0 = off)");
}

model::ModelConfig resolve(const ModelFlags& f, std::uint64_t seed) {
  auto c = f.config;
  c.aggregator = model::parse_aggregator(f.aggregator);
  c.mention_tuple_cap = f.cap;
  c.seed = seed;
  return c;
}

void finish(const std::string& name, CLI::App* sub, std::uint64_t seed,
            std::vector<fs::path> inputs, std::vector<fs::path> outputs) {
  Manifest m{name, resolved_options(sub), seed, std::move(inputs), outputs};
  write_manifest(m, outputs.front());
  std::clog << name << ": wrote " << outputs.front().string() << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"Document-level n-ary relation extraction toolkit", "docre"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  std::string config_path;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat JSON file of option values");
  };

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
  fs::path synth_out;
  SynthSpec spec;
  std::uint64_t synth_seed = spec.seed;
  std::vector<double> scope_mix(spec.scope_mix.begin(), spec.scope_mix.end());
  synth->add_option("--out-dir", synth_out, "output directory")->required();
  synth->add_option("--seed", synth_seed, "generator seed");
  synth->add_option("--train-docs", spec.train_docs, "training documents");
  synth->add_option("--dev-docs", spec.dev_docs, "development documents");
  synth->add_option("--test-docs", spec.test_docs, "test documents");
  synth->add_option("--facts-per-doc", spec.facts_per_doc, "planted facts per document");
  synth->add_option("--scope-mix", scope_mix, "sentence paragraph cross-paragraph fractions")
      ->expected(3);
  synth->add_option("--distractors", spec.distractors_per_doc, "distractor triples per document");
  synth->add_option("--paragraphs", spec.paragraphs_per_doc, "paragraphs per document");
  synth->add_option("--sentences", spec.sentences_per_paragraph, "sentences per paragraph");
  synth->add_flag("--diluted", spec.diluted, "weak repeated cues instead of scoped templates");
  synth->add_option("--diluted-cues", spec.diluted_cues, "cue sentences per fact when diluted");
  add_config(synth);

  // preprocess
  auto* pre = app.add_subcommand("preprocess", "tokenize, detect mentions, mask");
  fs::path pre_corpus, pre_drugs, pre_genes, pre_out;
  std::optional<fs::path> pre_exclude;
  pre->add_option("--corpus", pre_corpus, "corpus JSONL")->required()->check(CLI::ExistingFile);
  pre->add_option("--drugs", pre_drugs, "drug dictionary TSV")->required()->check(CLI::ExistingFile);
  pre->add_option("--genes", pre_genes, "gene dictionary TSV")->required()->check(CLI::ExistingFile);
  pre->add_option("--exclude", pre_exclude, "doc ids to drop, one per line")
      ->check(CLI::ExistingFile);
  pre->add_option("--out", pre_out, "processed JSONL")->required();
  add_config(pre);

  // link
  auto* lnk = app.add_subcommand("link", "rule-based gene-mutation assignment");
  fs::path lnk_processed, lnk_genes, lnk_seed, lnk_out;
  lnk->add_option("--processed", lnk_processed, "processed JSONL")->required()->check(CLI::ExistingFile);
  lnk->add_option("--genes", lnk_genes, "gene dictionary TSV")->required()->check(CLI::ExistingFile);
  lnk->add_option("--seed-map", lnk_seed, "mutation-gene TSV")->required()->check(CLI::ExistingFile);
  lnk->add_option("--out", lnk_out, "assignment JSONL")->required();
  add_config(lnk);

  // label
  auto* lab = app.add_subcommand("label", "generate candidates and distant labels");
  fs::path lab_processed, lab_out;
  std::optional<fs::path> lab_kb, lab_assign;
  std::string lab_scale = "document", lab_schema = "drug,gene,mutation";
  std::optional<std::size_t> lab_max_neg;
  std::uint64_t lab_seed = 0;
  lab->add_option("--processed", lab_processed, "processed JSONL")->required()->check(CLI::ExistingFile);
  lab->add_option("--kb", lab_kb, "KB TSV; omit for unlabeled candidates")->check(CLI::ExistingFile);
  lab->add_option("--scale", lab_scale, "sentence | paragraph | document");
  lab->add_option("--schema", lab_schema, "comma-separated entity types");
  lab->add_option("--assignments", lab_assign, "gene-mutation assignments; enables the filter")
      ->check(CLI::ExistingFile);
  lab->add_option("--max-negatives", lab_max_neg, "negatives kept per document");
  lab->add_option("--seed", lab_seed, "seed for negative capping");
  lab->add_option("--out", lab_out, "candidate JSONL")->required();
  add_config(lab);

  // train
  auto* trn = app.add_subcommand("train", "train one model variant");
  fs::path trn_processed, trn_cands, trn_out;
  std::optional<fs::path> trn_vectors, trn_dev_processed, trn_dev_cands, trn_dev_gold;
  std::string trn_variant = "doc", trn_schema = "drug,gene,mutation", trn_unit_kind = "noisy-or";
  std::uint64_t trn_seed = model::ModelConfig{}.seed;
  ModelFlags trn_flags;
  trn->add_option("--processed", trn_processed, "processed JSONL")->required()->check(CLI::ExistingFile);
  trn->add_option("--candidates", trn_cands, "labeled candidate JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  trn->add_option("--variant", trn_variant, "sent | para | doc");
  trn->add_option("--schema", trn_schema, "comma-separated entity types");
  trn->add_option("--seed", trn_seed, "init and shuffle seed");
  trn->add_option("--word-vectors", trn_vectors, "text word vectors")->check(CLI::ExistingFile);
  trn->add_option("--dev-processed", trn_dev_processed, "dev processed JSONL")->check(CLI::ExistingFile);
  trn->add_option("--dev-candidates", trn_dev_cands, "dev candidate JSONL")->check(CLI::ExistingFile);
  trn->add_option("--dev-gold", trn_dev_gold, "dev gold TSV")->check(CLI::ExistingFile);
  trn->add_option("--unit-ensemble", trn_unit_kind, "max | noisy-or, for dev scoring");
  trn->add_option("--out", trn_out, "checkpoint JSON")->required();
  add_model_flags(trn, trn_flags);
  add_config(trn);

  // predict
  auto* prd = app.add_subcommand("predict", "score candidates with a checkpoint");
  fs::path prd_ckpt, prd_processed, prd_out;
  std::optional<fs::path> prd_cands, prd_assign;
  std::string prd_unit_kind = "noisy-or";
  prd->add_option("--checkpoint", prd_ckpt, "checkpoint JSON")->required()->check(CLI::ExistingFile);
  prd->add_option("--processed", prd_processed, "processed JSONL")->required()->check(CLI::ExistingFile);
  prd->add_option("--candidates", prd_cands, "candidate JSONL; generated when omitted")
      ->check(CLI::ExistingFile);
  prd->add_option("--assignments", prd_assign, "filter generated candidates")
      ->check(CLI::ExistingFile);
  prd->add_option("--unit-ensemble", prd_unit_kind, "max | noisy-or across units");
  prd->add_option("--out", prd_out, "prediction JSONL")->required();
  add_config(prd);

  // ensemble
  auto* ens = app.add_subcommand("ensemble", "combine prediction files");
  std::vector<fs::path> ens_inputs;
  std::vector<std::string> ens_pairs;
  std::optional<fs::path> ens_assign;
  std::string ens_kind = "noisy-or", ens_name = "multiscale";
  fs::path ens_out;
  ens->add_option("--predictions", ens_inputs, "prediction JSONL files")->check(CLI::ExistingFile);
  ens->add_option("--pair", ens_pairs, "SCHEMA:FILE pair-classifier predictions to join");
  ens->add_option("--assignments", ens_assign, "gene-mutation assignments for --pair")
      ->check(CLI::ExistingFile);
  ens->add_option("--kind", ens_kind, "max | noisy-or");
  ens->add_option("--name", ens_name, "variant name of the output");
  ens->add_option("--out", ens_out, "prediction JSONL")->required();
  add_config(ens);

  // eval
  auto* evl = app.add_subcommand("eval", "AUC, max recall and thresholded P/R/F1");
  fs::path evl_preds, evl_gold, evl_out;
  std::optional<double> evl_threshold;
  std::optional<fs::path> evl_dev_preds, evl_dev_gold, evl_table;
  evl->add_option("--predictions", evl_preds, "prediction JSONL")->required()->check(CLI::ExistingFile);
  evl->add_option("--gold", evl_gold, "gold TSV")->required()->check(CLI::ExistingFile);
  evl->add_option("--threshold", evl_threshold, "decision threshold");
  evl->add_option("--dev-predictions", evl_dev_preds, "tune the threshold on these")
      ->check(CLI::ExistingFile);
  evl->add_option("--dev-gold", evl_dev_gold, "gold TSV for threshold tuning")
      ->check(CLI::ExistingFile);
  evl->add_option("--table", evl_table, "human-readable report");
  evl->add_option("--out", evl_out, "report JSON")->required();
  add_config(evl);

  // breakdown
  auto* brk = app.add_subcommand("breakdown", "correct extractions by co-occurrence scope");
  fs::path brk_preds, brk_gold, brk_processed, brk_out;
  double brk_threshold = 0.5;
  std::string brk_schema = "drug,gene,mutation";
  brk->add_option("--predictions", brk_preds, "prediction JSONL")->required()->check(CLI::ExistingFile);
  brk->add_option("--gold", brk_gold, "gold TSV")->required()->check(CLI::ExistingFile);
  brk->add_option("--processed", brk_processed, "processed JSONL")->required()->check(CLI::ExistingFile);
  brk->add_option("--threshold", brk_threshold, "decision threshold");
  brk->add_option("--schema", brk_schema, "comma-separated entity types");
  brk->add_option("--out", brk_out, "breakdown JSON")->required();
  add_config(brk);

  // prcurve
  auto* prc = app.add_subcommand("prcurve", "precision-recall curve CSV");
  fs::path prc_preds, prc_gold, prc_out;
  prc->add_option("--predictions", prc_preds, "prediction JSONL")->required()->check(CLI::ExistingFile);
  prc->add_option("--gold", prc_gold, "gold TSV")->required()->check(CLI::ExistingFile);
  prc->add_option("--out", prc_out, "CSV")->required();
  add_config(prc);

  std::vector<std::string> args(argv, argv + argc);
  args = apply_config_file(app, std::move(args));
  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (synth->parsed()) {
    spec.seed = synth_seed;
    std::copy(scope_mix.begin(), scope_mix.end(), spec.scope_mix.begin());
    const auto corpus = synthesize(spec);
    auto outputs = write_corpus(corpus, spec, synth_out);
    std::rotate(outputs.begin(), outputs.end() - 1, outputs.end());  // spec.json first
    finish("synth", synth, spec.seed, {}, outputs);
  } else if (pre->parsed()) {
    const auto docs = read_documents(pre_corpus);
    const auto dicts = pipeline::Dictionaries::load(pre_drugs, pre_genes);
    std::set<std::string> exclude;
    if (pre_exclude) exclude = load_id_list(*pre_exclude);
    const auto processed = pipeline::preprocess(docs, dicts, exclude);
    write_processed(pre_out, processed);
    std::vector<fs::path> inputs{pre_corpus, pre_drugs, pre_genes};
    if (pre_exclude) inputs.push_back(*pre_exclude);
    finish("preprocess", pre, 0, inputs, {pre_out});
  } else if (lnk->parsed()) {
    const auto docs = read_processed(lnk_processed);
    const auto genes = EntityDictionary::load(lnk_genes, EntityType::Gene);
    const auto assignments = pipeline::link(docs, genes, read_seed_map(lnk_seed));
    write_assignments(lnk_out, assignments);
    finish("link", lnk, 0, {lnk_processed, lnk_genes, lnk_seed}, {lnk_out});
  } else if (lab->parsed()) {
    const auto docs = read_processed(lab_processed);
    const auto schema = RelationSchema::parse(lab_schema);
    pipeline::LabelOptions options;
    options.scale = parse_scale_kind(lab_scale);
    KnowledgeBase kb;
    AssignmentIndex assignments;
    std::vector<fs::path> inputs{lab_processed};
    if (lab_kb) {
      kb = read_kb(*lab_kb);
      options.kb = &kb;
      inputs.push_back(*lab_kb);
    }
    if (lab_assign) {
      assignments = read_assignments(*lab_assign);
      options.assignments = &assignments;
      inputs.push_back(*lab_assign);
    }
    options.max_negatives = lab_max_neg;
    options.seed = lab_seed;
    const auto cands = pipeline::label(docs, schema, options);
    write_candidates(lab_out, cands);
    finish("label", lab, lab_seed, inputs, {lab_out});
  } else if (trn->parsed()) {
    const int dev_flags = bool(trn_dev_processed) + bool(trn_dev_cands) + bool(trn_dev_gold);
    if (dev_flags != 0 && dev_flags != 3)
      throw UsageError("--dev-processed, --dev-candidates and --dev-gold go together");
    const auto docs = read_processed(trn_processed);
    const auto cands = read_candidates(trn_cands);
    pipeline::TrainInputs in;
    in.variant = model::parse_variant(trn_variant);
    in.config = resolve(trn_flags, trn_seed);
    in.schema = RelationSchema::parse(trn_schema);
    in.docs = docs;
    in.candidates = cands;
    in.word_vectors = trn_vectors;
    in.unit_kind = parse_ensemble_kind(trn_unit_kind);
    std::vector<ProcessedDocument> dev_docs;
    std::vector<CandidateTuple> dev_cands;
    GoldSet dev_gold;
    std::vector<fs::path> inputs{trn_processed, trn_cands};
    if (trn_vectors) inputs.push_back(*trn_vectors);
    if (trn_dev_processed) {
      dev_docs = read_processed(*trn_dev_processed);
      dev_cands = read_candidates(*trn_dev_cands);
      dev_gold = read_gold(*trn_dev_gold);
      in.dev_docs = dev_docs;
      in.dev_candidates = dev_cands;
      in.dev_gold = &dev_gold;
      inputs.insert(inputs.end(), {*trn_dev_processed, *trn_dev_cands, *trn_dev_gold});
    }
    in.hooks.on_epoch = [](const model::EpochStats& s) {
      std::clog << "epoch " << s.epoch << " loss " << s.mean_loss << " updates " << s.updates;
      if (s.dev_score >= 0) std::clog << " dev_ap " << s.dev_score;
      std::clog << "\n";
    };
    const auto trained = pipeline::train(in);
    model::save_checkpoint(trained, trn_out);
    finish("train", trn, trn_seed, inputs, {trn_out});
  } else if (prd->parsed()) {
    const auto trained = model::load_checkpoint(prd_ckpt);
    const auto docs = read_processed(prd_processed);
    std::vector<fs::path> inputs{prd_ckpt, prd_processed};
    std::vector<CandidateTuple> cands;
    if (prd_cands) {
      if (prd_assign) throw UsageError("--assignments only applies to generated candidates");
      cands = read_candidates(*prd_cands);
      inputs.push_back(*prd_cands);
    } else {
      pipeline::LabelOptions options;
      options.scale = model::candidate_scale(trained.variant);
      AssignmentIndex assignments;
      if (prd_assign) {
        assignments = read_assignments(*prd_assign);
        options.assignments = &assignments;
        inputs.push_back(*prd_assign);
      }
      cands = pipeline::label(docs, trained.schema, options);
    }
    const auto preds = pipeline::predict(trained, docs, cands, parse_ensemble_kind(prd_unit_kind));
    write_predictions(prd_out, preds);
    finish("predict", prd, trained.config.seed, inputs, {prd_out});
  } else if (ens->parsed()) {
    if (ens_inputs.empty() && ens_pairs.empty())
      throw UsageError("ensemble needs --predictions or --pair");
    if (!ens_pairs.empty() && !ens_assign) throw UsageError("--pair needs --assignments");
    const auto kind = parse_ensemble_kind(ens_kind);
    std::vector<std::vector<Prediction>> variants;
    std::vector<fs::path> inputs;
    for (const auto& p : ens_inputs) {
      variants.push_back(read_predictions(p));
      inputs.push_back(p);
    }
    if (!ens_pairs.empty()) {
      const auto assignments = read_assignments(*ens_assign);
      inputs.push_back(*ens_assign);
      for (const auto& spec_str : ens_pairs) {
        const auto colon = spec_str.find(':');
        if (colon == std::string::npos) throw UsageError("--pair expects SCHEMA:FILE");
        const auto schema = RelationSchema::parse(spec_str.substr(0, colon));
        const fs::path file = spec_str.substr(colon + 1);
        const auto pairs = read_predictions(file);
        inputs.push_back(file);
        variants.push_back(subrelation_join(pairs, schema, assignments, kind, ens_name));
      }
    }
    write_predictions(ens_out, multiscale(variants, kind, ens_name));
    finish("ensemble", ens, 0, inputs, {ens_out});
  } else if (evl->parsed()) {
    const auto preds = read_predictions(evl_preds);
    const auto gold = read_gold(evl_gold);
    std::vector<fs::path> inputs{evl_preds, evl_gold};
    double threshold = 0.5;
    if (evl_threshold && evl_dev_preds) throw UsageError("give --threshold or --dev-predictions, not both");
    if (bool(evl_dev_preds) != bool(evl_dev_gold))
      throw UsageError("--dev-predictions and --dev-gold go together");
    if (evl_threshold) threshold = *evl_threshold;
    if (evl_dev_preds) {
      threshold = tune_threshold(read_predictions(*evl_dev_preds), read_gold(*evl_dev_gold));
      inputs.insert(inputs.end(), {*evl_dev_preds, *evl_dev_gold});
    }
    const auto report = evaluate(preds, gold, threshold);
    write_text(evl_out, to_json(report).dump(2) + "\n");
    std::vector<fs::path> outputs{evl_out};
    if (evl_table) {
      write_text(*evl_table, format_report_table(report));
      outputs.push_back(*evl_table);
    } else {
      std::clog << format_report_table(report);
    }
    finish("eval", evl, 0, inputs, outputs);
  } else if (brk->parsed()) {
    const auto preds = read_predictions(brk_preds);
    const auto gold = read_gold(brk_gold);
    const auto docs = read_processed(brk_processed);
    std::map<std::string, const AnnotatedDocument*> by_id;
    for (const auto& d : docs) by_id[d.original.document.id()] = &d.original;
    std::vector<Prediction> correct;
    for (const auto& p : preds)
      if (p.p >= brk_threshold && is_gold(gold, p.doc_id, p.entities)) correct.push_back(p);
    const auto breakdown = scope_breakdown(correct, by_id, RelationSchema::parse(brk_schema));
    write_text(brk_out, to_json(breakdown).dump(2) + "\n");
    finish("breakdown", brk, 0, {brk_preds, brk_gold, brk_processed}, {brk_out});
  } else if (prc->parsed()) {
    const auto preds = read_predictions(prc_preds);
    write_text(prc_out, format_pr_curve(pr_curve(preds, read_gold(prc_gold))));
    finish("prcurve", prc, 0, {prc_preds, prc_gold}, {prc_out});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
