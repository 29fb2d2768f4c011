#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gzsl {

struct Intent {
  std::string id;
  std::string label;
  std::optional<std::string> description;
  std::optional<std::string> domain;
};

struct Utterance {
  std::string id;
  std::string text;
  std::string intent_id;
  std::optional<std::string> dialogue_id;
  std::optional<int> turn_index;
};

struct Dataset {
  std::vector<Intent> intents;
  std::vector<Utterance> utterances;
  std::string provenance;

  const Intent* find_intent(const std::string& id) const;
  const Utterance* find_utterance(const std::string& id) const;
  std::vector<std::string> intent_ids_sorted() const;
  // Checks referential integrity, id uniqueness and non-empty texts.
  void validate() const;
};

// Seen/unseen intent inventory plus the train/test utterance partition.
struct GzslSplit {
  std::vector<std::string> seen;    // sorted intent ids
  std::vector<std::string> unseen;  // sorted intent ids
  std::vector<std::string> train;   // sorted utterance ids
  std::vector<std::string> test;    // sorted utterance ids
  std::int64_t seed = 0;

  bool is_seen(const std::string& intent_id) const;
  bool is_unseen(const std::string& intent_id) const;
  void validate(const Dataset& dataset) const;
};

struct DialogueTurn {
  std::string text;
  std::string intent_id;
};

struct Dialogue {
  std::string id;
  std::vector<DialogueTurn> turns;
};

// Keeps the first user turn of each dialogue plus every turn whose intent
// differs from the previously kept turn's intent; drops the rest.
Dataset normalize_dialogue_corpus(const std::vector<Dialogue>& dialogues);

const std::set<std::string>& default_stoplist();

// Drops utterances whose normalized text is in the stoplist or shorter than
// min_tokens tokens.
Dataset filter_uninformative(const Dataset& dataset,
                             const std::set<std::string>& stoplist = default_stoplist(),
                             std::size_t min_tokens = 2);

// Per intent: round-half-up(fraction * support) utterances, uniform without
// replacement. Groups draw from independent seed streams keyed by intent id.
std::vector<std::string> stratified_sample(
    const std::map<std::string, std::vector<std::string>>& utterances_by_intent,
    double fraction, std::uint64_t seed);

// Samples n_unseen intents uniformly as the unseen set; all their utterances
// go to test. Seen-intent utterances split train/test by train_fraction via
// stratified sampling. Pure function of (dataset, args, seed).
GzslSplit make_gzsl_split(const Dataset& dataset, std::size_t n_unseen,
                          double train_fraction, std::uint64_t seed);

// JSONL I/O. Utterance records: {"id","text","intent","dialogue_id"?,"turn"?};
// intent records: {"id","label","description"?,"domain"?}.
Dataset load_dataset(const std::filesystem::path& utterances_jsonl,
                     const std::filesystem::path& intents_jsonl);
void save_dataset(const Dataset& dataset,
                  const std::filesystem::path& utterances_jsonl,
                  const std::filesystem::path& intents_jsonl);

std::vector<Dialogue> load_dialogues(const std::filesystem::path& dialogues_jsonl);

GzslSplit load_split(const std::filesystem::path& path);
void save_split(const GzslSplit& split, const std::filesystem::path& path);

}  // namespace gzsl
