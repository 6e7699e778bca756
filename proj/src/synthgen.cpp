#include "docre/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "docre/errors.hpp"
#include "docre/io.hpp"
#include "docre/ner.hpp"

namespace docre {

namespace {

// Portable integer draws so output bytes do not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool chance(double p) { return double(engine_() >> 11) * 0x1.0p-53 < p; }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }
  // k distinct indices from [0, n) in random order.
  std::vector<int> sample(int n, int k) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    for (int i = 0; i < k; ++i) std::swap(all[i], all[i + below(n - i)]);
    all.resize(k);
    return all;
  }

 private:
  std::mt19937_64 engine_;
};

struct Entity {
  std::string id;
  std::vector<std::string> surfaces;
};

const std::vector<std::string> kDrugStems{
    "zal", "mer", "tov", "qua", "bel", "cor", "dan", "fen", "gal", "hol", "jex", "kep",
    "lum", "nor", "pav", "rix", "sol", "tam", "ul",  "vex", "wan", "yor", "zen", "bri"};
const std::vector<std::string> kDrugSuffixes{"otinib", "arafenib", "ociclib", "oparib",
                                             "olisib", "umab",     "ertinib", "imetinib"};
const std::string kResidues = "ACDEFGHIKLMNPQRSTVWY";

std::vector<Entity> make_drugs(int n, Rng& rng) {
  std::vector<Entity> out;
  std::set<std::string> used;
  while (int(out.size()) < n) {
    std::string name = rng.pick(kDrugStems) + rng.pick(kDrugStems) + rng.pick(kDrugSuffixes);
    if (!used.insert(name).second) continue;
    std::string code;
    code += char('A' + rng.below(26));
    code += char('A' + rng.below(26));
    code += std::to_string(1000 + rng.below(9000));
    if (!used.insert(fold_case(code)).second) continue;
    std::string id = name;
    std::transform(id.begin(), id.end(), id.begin(), [](unsigned char c) { return std::toupper(c); });
    out.push_back({id, {name, code}});
  }
  return out;
}

std::vector<Entity> make_genes(int n, Rng& rng) {
  std::vector<Entity> out;
  std::set<std::string> used;
  while (int(out.size()) < n) {
    std::string sym;
    for (int i = 0; i < 3; ++i) sym += char('A' + rng.below(26));
    sym += std::to_string(1 + rng.below(9));
    if (!used.insert(sym).second) continue;
    out.push_back({sym, {sym}});
  }
  return out;
}

std::vector<Entity> make_mutations(int n, Rng& rng) {
  std::vector<Entity> out;
  std::set<std::string> used;
  while (int(out.size()) < n) {
    const char ref = kResidues[rng.below(kResidues.size())];
    char alt = ref;
    while (alt == ref) alt = kResidues[rng.below(kResidues.size())];
    std::string id = ref + std::to_string(10 + rng.below(990)) + alt;
    if (!used.insert(id).second) continue;
    out.push_back({id, {id, "p." + id}});
  }
  return out;
}

// {D}, {G}, {M} are replaced with surface forms.
const std::vector<std::string> kSentenceFact{
    "{D} showed a marked response in patients whose tumors carried {G} {M} .",
    "Treatment with {D} was effective against {G} {M} positive disease .",
    "{G} {M} confers sensitivity to {D} in preclinical models .",
    "Patients harboring {G} {M} responded durably to {D} .",
};
const std::vector<std::string> kIntroduce{
    "{G} {M} was detected in the tumor sample .",
    "Sequencing revealed {G} {M} in this cohort .",
    "We identified {G} {M} in the biopsy .",
};
const std::vector<std::string> kTreat{
    "Tumors with {M} responded to {D} .",
    "The {M} variant predicted sensitivity to {D} .",
    "{D} was effective in the presence of {M} .",
};
const std::vector<std::string> kNeutralTriple{
    "{D} was administered , and {G} and {M} were not assessed .",
    "Samples were screened for {G} and {M} before {D} became available .",
    "The {D} arm listed {G} status and {M} testing as optional .",
};
const std::vector<std::string> kNeutralDrug{"{D} toxicity was recorded .",
                                            "Dosing of {D} followed the label ."};
const std::vector<std::string> kNeutralGene{"{G} expression was measured .",
                                            "{G} copy number was stable ."};
const std::vector<std::string> kNeutralMutation{"{M} was reported in an unrelated cohort .",
                                                "{M} frequency was low ."};
const std::vector<std::string> kWeakCue{
    "{D} , {G} and {M} were discussed together .",
    "The review mentions {D} alongside {G} and {M} .",
};
const std::vector<std::string> kFiller{
    "The study enrolled patients at several centers .",
    "Further work is needed to confirm these findings .",
    "Results are summarized in the table below .",
    "Adverse events were mild and manageable .",
    "Median follow up was eleven months .",
    "Baseline characteristics were balanced .",
    "All analyses were prespecified .",
    "Tissue was collected at diagnosis .",
};

std::string fill(const std::string& tmpl, const std::string& d, const std::string& g,
                 const std::string& m) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] == '{' && i + 2 < tmpl.size() && tmpl[i + 2] == '}') {
      const char k = tmpl[i + 1];
      out += k == 'D' ? d : k == 'G' ? g : m;
      i += 2;
    } else {
      out += tmpl[i];
    }
  }
  return out;
}

// Sentence grid of one document; empty strings are filled with filler text.
using Grid = std::vector<std::vector<std::string>>;

struct DocPlan {
  std::vector<int> drugs, genes, mutations;  // fact entities first
};

std::set<EntityTuple> all_tuples(const DocPlan& plan, const std::vector<Entity>& drugs,
                                 const std::vector<Entity>& genes,
                                 const std::vector<Entity>& mutations) {
  std::set<EntityTuple> out;
  for (int d : plan.drugs)
    for (int g : plan.genes)
      for (int m : plan.mutations) out.insert({drugs[d].id, genes[g].id, mutations[m].id});
  return out;
}

std::vector<PlantScope> scope_quota(const SynthSpec& spec, int facts, Rng& rng) {
  std::array<int, 3> counts{};
  std::array<double, 3> rema{};
  int assigned = 0;
  for (int k = 0; k < 3; ++k) {
    const double exact = spec.scope_mix[k] * facts;
    counts[k] = static_cast<int>(std::floor(exact + 1e-9));
    rema[k] = exact - counts[k];
    assigned += counts[k];
  }
  while (assigned < facts) {
    int best = 0;
    for (int k = 1; k < 3; ++k)
      if (rema[k] > rema[best] + 1e-12) best = k;
    ++counts[best];
    rema[best] = -1;
    ++assigned;
  }
  std::vector<PlantScope> out;
  for (int k = 0; k < 3; ++k) out.insert(out.end(), counts[k], static_cast<PlantScope>(k));
  rng.shuffle(out);
  return out;
}

}  // namespace

std::string_view to_string(PlantScope scope) {
  switch (scope) {
    case PlantScope::Sentence: return "sentence";
    case PlantScope::Paragraph: return "paragraph";
    case PlantScope::CrossParagraph: return "cross_paragraph";
  }
  return "?";
}

void SynthSpec::validate() const {
  for (int v : {train_docs, dev_docs, test_docs, facts_per_doc, distractors_per_doc})
    if (v < 0) throw DataError("synth spec counts must be non-negative");
  if (num_drugs <= 0 || num_genes <= 0 || num_mutations <= 0)
    throw DataError("synth spec needs at least one entity of each type");
  double sum = 0;
  for (double f : scope_mix) {
    if (f < 0) throw DataError("scope fractions must be non-negative");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw DataError("scope fractions must sum to 1");
  const int per_doc = facts_per_doc + distractors_per_doc;
  if (per_doc > num_drugs || per_doc > num_genes || per_doc > num_mutations)
    throw DataError("synth spec needs more distinct entities than the pools hold");
  if (diluted) {
    if (diluted_cues < 2) throw DataError("diluted mode needs at least 2 cues per fact");
  } else {
    if (paragraphs_per_doc < 2 * facts_per_doc)
      throw DataError("synth spec needs two paragraphs per fact");
    if (sentences_per_paragraph < 2) throw DataError("synth spec needs two sentences per paragraph");
  }
}

void to_json(nlohmann::json& j, const SynthSpec& s) {
  j = {{"seed", s.seed},
       {"train_docs", s.train_docs},
       {"dev_docs", s.dev_docs},
       {"test_docs", s.test_docs},
       {"num_drugs", s.num_drugs},
       {"num_genes", s.num_genes},
       {"num_mutations", s.num_mutations},
       {"facts_per_doc", s.facts_per_doc},
       {"scope_mix", s.scope_mix},
       {"distractors_per_doc", s.distractors_per_doc},
       {"paragraphs_per_doc", s.paragraphs_per_doc},
       {"sentences_per_paragraph", s.sentences_per_paragraph},
       {"diluted", s.diluted},
       {"diluted_cues", s.diluted_cues}};
}

void from_json(const nlohmann::json& j, SynthSpec& s) {
  static const std::set<std::string> known{"seed", "train_docs", "dev_docs", "test_docs",
                                           "num_drugs", "num_genes", "num_mutations",
                                           "facts_per_doc", "scope_mix", "distractors_per_doc",
                                           "paragraphs_per_doc", "sentences_per_paragraph",
                                           "diluted", "diluted_cues"};
  for (const auto& [k, v] : j.items())
    if (!known.contains(k)) throw DataError("unknown synth spec key '" + k + "'");
  SynthSpec d;
  s.seed = j.value("seed", d.seed);
  s.train_docs = j.value("train_docs", d.train_docs);
  s.dev_docs = j.value("dev_docs", d.dev_docs);
  s.test_docs = j.value("test_docs", d.test_docs);
  s.num_drugs = j.value("num_drugs", d.num_drugs);
  s.num_genes = j.value("num_genes", d.num_genes);
  s.num_mutations = j.value("num_mutations", d.num_mutations);
  s.facts_per_doc = j.value("facts_per_doc", d.facts_per_doc);
  s.scope_mix = j.value("scope_mix", d.scope_mix);
  s.distractors_per_doc = j.value("distractors_per_doc", d.distractors_per_doc);
  s.paragraphs_per_doc = j.value("paragraphs_per_doc", d.paragraphs_per_doc);
  s.sentences_per_paragraph = j.value("sentences_per_paragraph", d.sentences_per_paragraph);
  s.diluted = j.value("diluted", d.diluted);
  s.diluted_cues = j.value("diluted_cues", d.diluted_cues);
}

GoldSet SynthSplit::gold() const {
  GoldSet out;
  for (const auto& d : documents) out[d.doc_id];
  for (const auto& f : facts) out[f.doc_id].insert(f.entities);
  return out;
}

const SynthSplit& SynthCorpus::split(std::string_view name) const {
  for (const auto& s : splits)
    if (s.name == name) return s;
  throw DataError("no split named '" + std::string(name) + "'");
}

SynthCorpus synthesize(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const auto drugs = make_drugs(spec.num_drugs, rng);
  const auto genes = make_genes(spec.num_genes, rng);
  const auto mutations = make_mutations(spec.num_mutations, rng);

  SynthCorpus corpus;
  for (const auto& e : drugs)
    for (const auto& s : e.surfaces) corpus.drugs.emplace_back(s, e.id);
  for (const auto& e : genes)
    for (const auto& s : e.surfaces) corpus.genes.emplace_back(s, e.id);

  const int per_doc = spec.facts_per_doc + spec.distractors_per_doc;
  std::set<EntityTuple> planted;      // every planted fact so far
  std::set<EntityTuple> unplanted;    // every other document tuple so far
  const std::vector<std::pair<std::string, int>> split_sizes{
      {"train", spec.train_docs}, {"dev", spec.dev_docs}, {"test", spec.test_docs}};

  for (const auto& [name, count] : split_sizes) {
    SynthSplit split;
    split.name = name;
    const auto scopes = scope_quota(spec, count * spec.facts_per_doc, rng);
    for (int doc = 0; doc < count; ++doc) {
      char id_buf[32];
      std::snprintf(id_buf, sizeof id_buf, "%s-%04d", name.c_str(), doc);
      const std::string doc_id = id_buf;

      DocPlan plan;
      std::vector<EntityTuple> facts;
      for (int attempt = 0;; ++attempt) {
        if (attempt > 10000) throw DataError("synth spec infeasible: cannot keep facts unique");
        plan.drugs = rng.sample(spec.num_drugs, per_doc);
        plan.genes = rng.sample(spec.num_genes, per_doc);
        plan.mutations = rng.sample(spec.num_mutations, per_doc);
        facts.clear();
        for (int f = 0; f < spec.facts_per_doc; ++f)
          facts.push_back({drugs[plan.drugs[f]].id, genes[plan.genes[f]].id,
                           mutations[plan.mutations[f]].id});
        const auto tuples = all_tuples(plan, drugs, genes, mutations);
        const std::set<EntityTuple> fact_set(facts.begin(), facts.end());
        bool ok = true;
        for (const auto& t : tuples) {
          const bool is_fact = fact_set.contains(t);
          if ((is_fact && (unplanted.contains(t) || planted.contains(t))) ||
              (!is_fact && planted.contains(t))) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        for (const auto& t : tuples) (fact_set.contains(t) ? planted : unplanted).insert(t);
        break;
      }

      auto surface = [&](const Entity& e) { return rng.pick(e.surfaces); };
      auto render = [&](const std::vector<std::string>& pool, int k) {
        return fill(rng.pick(pool), surface(drugs[plan.drugs[k]]), surface(genes[plan.genes[k]]),
                    surface(mutations[plan.mutations[k]]));
      };

      Grid grid;
      if (!spec.diluted) {
        grid.assign(spec.paragraphs_per_doc, std::vector<std::string>(spec.sentences_per_paragraph));
        std::vector<int> paragraphs(spec.paragraphs_per_doc);
        std::iota(paragraphs.begin(), paragraphs.end(), 0);
        rng.shuffle(paragraphs);
        std::size_t next = 0;
        for (int f = 0; f < spec.facts_per_doc; ++f) {
          const PlantScope scope = scopes[doc * spec.facts_per_doc + f];
          split.facts.push_back({doc_id, facts[f], scope});
          if (scope == PlantScope::Sentence) {
            const int p = paragraphs[next++];
            grid[p][rng.below(spec.sentences_per_paragraph)] = render(kSentenceFact, f);
          } else if (scope == PlantScope::Paragraph) {
            const int p = paragraphs[next++];
            auto slots = rng.sample(spec.sentences_per_paragraph, 2);
            std::sort(slots.begin(), slots.end());
            grid[p][slots[0]] = render(kIntroduce, f);
            grid[p][slots[1]] = render(kTreat, f);
          } else {
            int p1 = paragraphs[next++], p2 = paragraphs[next++];
            if (p1 > p2) std::swap(p1, p2);
            grid[p1][rng.below(spec.sentences_per_paragraph)] = render(kIntroduce, f);
            grid[p2][rng.below(spec.sentences_per_paragraph)] = render(kTreat, f);
          }
        }
        // Distractors go into free sentence slots, preferring paragraphs
        // without facts.
        std::vector<std::pair<int, int>> free_slots, fact_slots;
        std::set<int> fact_paragraphs(paragraphs.begin(), paragraphs.begin() + next);
        for (int p = 0; p < spec.paragraphs_per_doc; ++p)
          for (int s = 0; s < spec.sentences_per_paragraph; ++s)
            if (grid[p][s].empty()) (fact_paragraphs.contains(p) ? fact_slots : free_slots).push_back({p, s});
        rng.shuffle(free_slots);
        rng.shuffle(fact_slots);
        free_slots.insert(free_slots.end(), fact_slots.begin(), fact_slots.end());
        std::size_t slot = 0;
        auto place = [&](std::string sentence) {
          if (slot >= free_slots.size()) {
            grid.push_back(std::vector<std::string>(spec.sentences_per_paragraph));
            grid.back()[0] = std::move(sentence);
            for (int s = 1; s < spec.sentences_per_paragraph; ++s)
              free_slots.push_back({int(grid.size()) - 1, s});
            return;
          }
          const auto [p, s] = free_slots[slot++];
          grid[p][s] = std::move(sentence);
        };
        for (int k = spec.facts_per_doc; k < per_doc; ++k) {
          if (rng.chance(0.5)) {
            place(render(kNeutralTriple, k));
          } else {
            place(render(kNeutralDrug, k));
            place(render(kNeutralGene, k));
            place(render(kNeutralMutation, k));
          }
        }
      } else {
        // One weak cue per paragraph; facts get diluted_cues of them and
        // distractors fewer.
        std::vector<int> cue_owner;
        for (int f = 0; f < spec.facts_per_doc; ++f) {
          split.facts.push_back({doc_id, facts[f], PlantScope::Sentence});
          cue_owner.insert(cue_owner.end(), spec.diluted_cues, f);
        }
        for (int k = spec.facts_per_doc; k < per_doc; ++k)
          cue_owner.insert(cue_owner.end(), 1 + rng.below(spec.diluted_cues - 1), k);
        rng.shuffle(cue_owner);
        for (int owner : cue_owner) {
          std::vector<std::string> para(1 + rng.below(2));
          para.insert(para.begin() + rng.below(para.size() + 1), render(kWeakCue, owner));
          grid.push_back(std::move(para));
        }
      }

      RawDocument raw{doc_id, {}};
      for (auto& para : grid) {
        for (auto& s : para)
          if (s.empty()) s = rng.pick(kFiller);
        raw.paragraphs.push_back(para);
      }
      split.documents.push_back(std::move(raw));
    }
    corpus.splits.push_back(std::move(split));
  }

  for (const auto& f : corpus.splits.front().facts) corpus.kb.insert(f.entities);
  for (const auto& s : corpus.splits)
    for (const auto& f : s.facts) corpus.seed_map[f.entities[2]].insert(f.entities[1]);
  return corpus;
}

std::vector<std::filesystem::path> write_corpus(const SynthCorpus& corpus, const SynthSpec& spec,
                                                const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  auto emit = [&](const std::string& name, const std::string& text) {
    out.push_back(dir / name);
    write_text(out.back(), text);
  };
  for (const auto& s : corpus.splits) {
    std::string lines;
    for (const auto& d : s.documents) lines += serialize(d) + "\n";
    emit(s.name + ".jsonl", lines);
    emit("gold_" + s.name + ".tsv", format_gold(s.gold()));
  }
  emit("kb.tsv", format_kb(corpus.kb));
  emit("drugs.tsv", format_dictionary(corpus.drugs));
  emit("genes.tsv", format_dictionary(corpus.genes));
  emit("seed_map.tsv", format_seed_map(corpus.seed_map));
  emit("spec.json", nlohmann::json(spec).dump(2) + "\n");
  return out;
}

}  // namespace docre
