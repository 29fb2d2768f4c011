#include "gzsl/dataless.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gzsl/error.hpp"
#include "gzsl/jsonl.hpp"
#include "gzsl/rng.hpp"
#include "gzsl/text.hpp"

namespace gzsl {

namespace {

// Third-person and first-person desire prefixes that rewrite into each other.
const std::vector<std::string>& desire_prefixes() {
  static const std::vector<std::string> prefixes = {
      "the user wants to", "the user would like to", "i want to",
      "i would like to",   "i need to"};
  return prefixes;
}

const std::map<std::string, std::vector<std::string>>& thesaurus() {
  static const std::map<std::string, std::vector<std::string>> entries = {
      {"book", {"reserve"}},       {"reserve", {"book"}},
      {"find", {"search for", "look for"}}, {"search", {"look"}},
      {"get", {"obtain", "receive"}},       {"buy", {"purchase"}},
      {"purchase", {"buy"}},       {"check", {"verify"}},
      {"cancel", {"drop"}},        {"send", {"deliver"}},
      {"show", {"display"}},       {"play", {"start"}},
      {"schedule", {"arrange"}},   {"order", {"request"}},
      {"rent", {"hire"}},          {"transfer", {"move"}},
      {"reset", {"restore"}},      {"pay", {"settle"}},
      {"track", {"follow"}},       {"update", {"refresh"}}};
  return entries;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.size() >= prefix.size() && s.compare(0, prefix.size(), prefix) == 0 &&
         (s.size() == prefix.size() || s[prefix.size()] == ' ');
}

void push_unique(std::vector<std::string>& out, std::string value) {
  if (std::find(out.begin(), out.end(), value) == out.end())
    out.push_back(std::move(value));
}

}  // namespace

ParaphraseFamily parse_family(const std::string& name) {
  if (name == "prefix_swap") return ParaphraseFamily::kPrefixSwap;
  if (name == "synonym") return ParaphraseFamily::kSynonym;
  if (name == "question") return ParaphraseFamily::kQuestion;
  throw Error("unknown paraphrase family: " + name +
              " (expected prefix_swap|synonym|question)");
}

std::string family_name(ParaphraseFamily family) {
  switch (family) {
    case ParaphraseFamily::kPrefixSwap: return "prefix_swap";
    case ParaphraseFamily::kSynonym: return "synonym";
    case ParaphraseFamily::kQuestion: return "question";
  }
  throw Error("invalid paraphrase family");
}

const std::vector<ParaphraseFamily>& all_families() {
  static const std::vector<ParaphraseFamily> families = {
      ParaphraseFamily::kPrefixSwap, ParaphraseFamily::kSynonym,
      ParaphraseFamily::kQuestion};
  return families;
}

std::vector<std::string> paraphrase(const std::string& sentence,
                                    ParaphraseFamily family, std::uint64_t seed) {
  if (sentence.empty()) throw Error("paraphrase: empty sentence");
  std::string norm = normalize_text(sentence);
  std::vector<std::string> out;
  out.push_back(norm);  // identity variant

  switch (family) {
    case ParaphraseFamily::kPrefixSwap: {
      for (const auto& prefix : desire_prefixes()) {
        if (!starts_with(norm, prefix)) continue;
        std::string tail = norm.substr(prefix.size());
        for (const auto& replacement : desire_prefixes()) {
          if (replacement == prefix) continue;
          push_unique(out, replacement + tail);
        }
        break;
      }
      break;
    }
    case ParaphraseFamily::kSynonym: {
      std::vector<std::string> tokens = tokenize(norm);
      Rng rng = Rng(seed).child("synonym:" + norm);
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        auto it = thesaurus().find(tokens[i]);
        if (it == thesaurus().end()) continue;
        const auto& alts = it->second;
        const std::string& alt = alts[alts.size() == 1 ? 0 : rng.next_below(alts.size())];
        std::vector<std::string> variant = tokens;
        variant[i] = alt;
        push_unique(out, join(variant));
      }
      break;
    }
    case ParaphraseFamily::kQuestion: {
      struct Rewrite {
        std::string from, to;
      };
      static const std::vector<Rewrite> rewrites = {
          {"the user wants to", "does the user want to"},
          {"the user would like to", "would the user like to"},
          {"does the user want to", "the user wants to"},
          {"i want to", "can i"},
          {"i would like to", "could i"},
          {"i need to", "how do i"},
      };
      for (const auto& r : rewrites) {
        if (starts_with(norm, r.from)) {
          push_unique(out, r.to + norm.substr(r.from.size()));
          break;
        }
      }
      break;
    }
  }
  return out;
}

std::vector<SyntheticUtterance> build_synthetic_trainset(
    const Dataset& dataset, const std::vector<std::string>& seen_intents,
    const std::vector<Template>& templates,
    const std::vector<ParaphraseFamily>& families, std::size_t n_per_intent,
    std::uint64_t seed) {
  if (seen_intents.empty()) throw Error("build_synthetic_trainset: no seen intents");
  if (templates.empty()) throw Error("build_synthetic_trainset: no templates");

  std::vector<SyntheticUtterance> out;
  std::vector<std::string> sorted = seen_intents;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& intent_id : sorted) {
    const Intent* intent = dataset.find_intent(intent_id);
    if (!intent) throw Error("seen intent not in dataset: " + intent_id);
    std::set<std::string> texts_seen;
    std::vector<SyntheticUtterance> variants;
    for (const auto& tmpl : templates) {
      std::string sentence = lexicalize_label(intent->label, tmpl);
      for (ParaphraseFamily family : families) {
        for (const auto& text : paraphrase(sentence, family, seed)) {
          if (!texts_seen.insert(text).second) continue;
          variants.push_back({text, intent_id, family_name(family), seed});
        }
      }
    }
    if (variants.size() > n_per_intent) variants.resize(n_per_intent);
    out.insert(out.end(), variants.begin(), variants.end());
  }
  return out;
}

std::pair<Dataset, GzslSplit> dataless_view(
    const Dataset& dataset, const GzslSplit& split,
    const std::vector<SyntheticUtterance>& synthetic) {
  Dataset view;
  view.provenance = dataset.provenance + "+synthetic";
  view.intents = dataset.intents;

  GzslSplit new_split;
  new_split.seen = split.seen;
  new_split.unseen = split.unseen;
  new_split.test = split.test;
  new_split.seed = split.seed;

  // Test utterances come from the real dataset; train is synthetic only.
  std::set<std::string> test_ids(split.test.begin(), split.test.end());
  for (const auto& u : dataset.utterances)
    if (test_ids.count(u.id)) view.utterances.push_back(u);

  std::size_t counter = 0;
  for (const auto& s : synthetic) {
    if (!split.is_seen(s.source_intent_id))
      throw Error("synthetic utterance sourced from non-seen intent: " +
                  s.source_intent_id);
    Utterance u;
    u.id = "syn:" + std::to_string(counter++);
    u.text = s.text;
    u.intent_id = s.source_intent_id;
    new_split.train.push_back(u.id);
    view.utterances.push_back(std::move(u));
  }
  std::sort(new_split.train.begin(), new_split.train.end());
  view.validate();
  return {std::move(view), std::move(new_split)};
}

void save_synthetic(const std::vector<SyntheticUtterance>& synthetic,
                    const std::filesystem::path& path) {
  std::vector<Json> records;
  records.reserve(synthetic.size());
  for (const auto& s : synthetic) {
    records.push_back(Json{{"text", s.text},
                           {"intent", s.source_intent_id},
                           {"generator", s.generator_id},
                           {"seed", s.seed}});
  }
  write_jsonl(path, records);
}

}  // namespace gzsl
