#include "gzsl/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "gzsl/error.hpp"
#include "gzsl/jsonl.hpp"
#include "gzsl/rng.hpp"
#include "gzsl/text.hpp"

namespace gzsl {

const Intent* Dataset::find_intent(const std::string& id) const {
  for (const auto& it : intents)
    if (it.id == id) return &it;
  return nullptr;
}

const Utterance* Dataset::find_utterance(const std::string& id) const {
  for (const auto& u : utterances)
    if (u.id == id) return &u;
  return nullptr;
}

std::vector<std::string> Dataset::intent_ids_sorted() const {
  std::vector<std::string> ids;
  ids.reserve(intents.size());
  for (const auto& it : intents) ids.push_back(it.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

void Dataset::validate() const {
  std::unordered_set<std::string> intent_ids;
  for (const auto& it : intents) {
    if (it.label.empty()) throw Error("intent " + it.id + ": empty label");
    if (!intent_ids.insert(it.id).second)
      throw Error("duplicate intent id: " + it.id);
  }
  std::unordered_set<std::string> utt_ids;
  for (const auto& u : utterances) {
    if (!utt_ids.insert(u.id).second)
      throw Error("duplicate utterance id: " + u.id);
    if (normalize_text(u.text).empty())
      throw Error("utterance " + u.id + ": empty text");
    if (!intent_ids.count(u.intent_id))
      throw Error("utterance " + u.id + ": unknown intent " + u.intent_id);
  }
}

bool GzslSplit::is_seen(const std::string& intent_id) const {
  return std::binary_search(seen.begin(), seen.end(), intent_id);
}

bool GzslSplit::is_unseen(const std::string& intent_id) const {
  return std::binary_search(unseen.begin(), unseen.end(), intent_id);
}

void GzslSplit::validate(const Dataset& dataset) const {
  for (const auto& id : seen)
    if (is_unseen(id)) throw Error("split: intent in both seen and unseen: " + id);
  std::unordered_map<std::string, const Utterance*> utts;
  for (const auto& u : dataset.utterances) utts[u.id] = &u;
  std::unordered_set<std::string> train_set(train.begin(), train.end());
  for (const auto& id : train) {
    auto it = utts.find(id);
    if (it == utts.end()) throw Error("split: unknown train utterance " + id);
    if (!is_seen(it->second->intent_id))
      throw Error("split: train utterance " + id + " has unseen gold intent");
  }
  for (const auto& id : test) {
    auto it = utts.find(id);
    if (it == utts.end()) throw Error("split: unknown test utterance " + id);
    const std::string& gold = it->second->intent_id;
    if (!is_seen(gold) && !is_unseen(gold))
      throw Error("split: test utterance " + id + " outside seen+unseen");
    if (train_set.count(id)) throw Error("split: utterance in train and test: " + id);
  }
}

Dataset normalize_dialogue_corpus(const std::vector<Dialogue>& dialogues) {
  Dataset out;
  out.provenance = "dialogue-corpus";
  std::set<std::string> intent_ids;
  for (const auto& d : dialogues) {
    std::string prev_intent;
    bool first = true;
    for (std::size_t turn = 0; turn < d.turns.size(); ++turn) {
      const auto& t = d.turns[turn];
      if (t.intent_id.empty())
        throw Error("dialogue " + d.id + " turn " + std::to_string(turn) +
                    ": missing intent tag");
      if (first || t.intent_id != prev_intent) {
        Utterance u;
        u.id = d.id + "#" + std::to_string(turn);
        u.text = t.text;
        u.intent_id = t.intent_id;
        u.dialogue_id = d.id;
        u.turn_index = static_cast<int>(turn);
        out.utterances.push_back(std::move(u));
        intent_ids.insert(t.intent_id);
        prev_intent = t.intent_id;
        first = false;
      }
    }
  }
  for (const auto& id : intent_ids) out.intents.push_back({id, id, {}, {}});
  return out;
}

const std::set<std::string>& default_stoplist() {
  static const std::set<std::string> stoplist = {
      "ok",   "okay",  "thanks", "thank you", "yes",   "no",
      "hi",   "hello", "bye",    "goodbye",   "great", "sure"};
  return stoplist;
}

Dataset filter_uninformative(const Dataset& dataset,
                             const std::set<std::string>& stoplist,
                             std::size_t min_tokens) {
  Dataset out;
  out.intents = dataset.intents;
  out.provenance = dataset.provenance;
  for (const auto& u : dataset.utterances) {
    std::string norm = normalize_text(u.text);
    if (stoplist.count(norm)) continue;
    if (tokenize(norm).size() < min_tokens) continue;
    out.utterances.push_back(u);
  }
  return out;
}

std::vector<std::string> stratified_sample(
    const std::map<std::string, std::vector<std::string>>& utterances_by_intent,
    double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0) || fraction > 1.0)
    throw Error("stratified_sample: fraction must be in (0, 1]");
  Rng base(seed);
  std::vector<std::string> selected;
  for (const auto& [intent_id, ids] : utterances_by_intent) {
    // round half up
    std::size_t take = static_cast<std::size_t>(
        std::floor(fraction * static_cast<double>(ids.size()) + 0.5));
    take = std::min(take, ids.size());
    if (take == 0) continue;
    std::vector<std::string> group = ids;
    std::sort(group.begin(), group.end());
    Rng rng = base.child(intent_id);
    for (std::size_t idx : rng.sample_without_replacement(group.size(), take))
      selected.push_back(group[idx]);
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

GzslSplit make_gzsl_split(const Dataset& dataset, std::size_t n_unseen,
                          double train_fraction, std::uint64_t seed) {
  std::vector<std::string> all_intents = dataset.intent_ids_sorted();
  if (n_unseen == 0 || n_unseen >= all_intents.size())
    throw Error("make_gzsl_split: n_unseen must be in (0, #intents)");
  if (!(train_fraction > 0.0) || train_fraction > 1.0)
    throw Error("make_gzsl_split: train_fraction must be in (0, 1]");

  GzslSplit split;
  split.seed = static_cast<std::int64_t>(seed);

  Rng rng = Rng(seed).child("unseen-intents");
  std::vector<std::size_t> picks =
      rng.sample_without_replacement(all_intents.size(), n_unseen);
  std::set<std::string> unseen_set;
  for (std::size_t idx : picks) unseen_set.insert(all_intents[idx]);
  for (const auto& id : all_intents) {
    if (unseen_set.count(id))
      split.unseen.push_back(id);
    else
      split.seen.push_back(id);
  }

  std::map<std::string, std::vector<std::string>> seen_groups;
  for (const auto& u : dataset.utterances) {
    if (unseen_set.count(u.intent_id)) {
      split.test.push_back(u.id);  // unseen-intent utterances are test-only
    } else {
      seen_groups[u.intent_id].push_back(u.id);
    }
  }

  std::vector<std::string> train = stratified_sample(
      seen_groups, train_fraction, Rng(seed).child("train-sample").next_u64());
  std::set<std::string> train_set(train.begin(), train.end());
  split.train = std::move(train);
  for (const auto& [intent_id, ids] : seen_groups) {
    for (const auto& id : ids)
      if (!train_set.count(id)) split.test.push_back(id);
  }
  std::sort(split.test.begin(), split.test.end());
  return split;
}

Dataset load_dataset(const std::filesystem::path& utterances_jsonl,
                     const std::filesystem::path& intents_jsonl) {
  Dataset out;
  out.provenance = utterances_jsonl.string();
  for (const auto& rec : read_jsonl(intents_jsonl)) {
    Intent it;
    it.id = rec.at("id").get<std::string>();
    it.label = rec.at("label").get<std::string>();
    if (rec.contains("description") && !rec["description"].is_null())
      it.description = rec["description"].get<std::string>();
    if (rec.contains("domain") && !rec["domain"].is_null())
      it.domain = rec["domain"].get<std::string>();
    out.intents.push_back(std::move(it));
  }
  for (const auto& rec : read_jsonl(utterances_jsonl)) {
    Utterance u;
    u.id = rec.at("id").get<std::string>();
    u.text = rec.at("text").get<std::string>();
    u.intent_id = rec.at("intent").get<std::string>();
    if (rec.contains("dialogue_id") && !rec["dialogue_id"].is_null())
      u.dialogue_id = rec["dialogue_id"].get<std::string>();
    if (rec.contains("turn") && !rec["turn"].is_null())
      u.turn_index = rec["turn"].get<int>();
    out.utterances.push_back(std::move(u));
  }
  out.validate();
  return out;
}

void save_dataset(const Dataset& dataset,
                  const std::filesystem::path& utterances_jsonl,
                  const std::filesystem::path& intents_jsonl) {
  std::vector<Json> intents;
  for (const auto& it : dataset.intents) {
    Json rec{{"id", it.id}, {"label", it.label}};
    if (it.description) rec["description"] = *it.description;
    if (it.domain) rec["domain"] = *it.domain;
    intents.push_back(std::move(rec));
  }
  write_jsonl(intents_jsonl, intents);

  std::vector<Json> utts;
  for (const auto& u : dataset.utterances) {
    Json rec{{"id", u.id}, {"text", u.text}, {"intent", u.intent_id}};
    if (u.dialogue_id) rec["dialogue_id"] = *u.dialogue_id;
    if (u.turn_index) rec["turn"] = *u.turn_index;
    utts.push_back(std::move(rec));
  }
  write_jsonl(utterances_jsonl, utts);
}

std::vector<Dialogue> load_dialogues(const std::filesystem::path& dialogues_jsonl) {
  std::vector<Dialogue> out;
  for (const auto& rec : read_jsonl(dialogues_jsonl)) {
    Dialogue d;
    d.id = rec.at("dialogue_id").get<std::string>();
    for (const auto& t : rec.at("turns")) {
      DialogueTurn turn;
      turn.text = t.at("text").get<std::string>();
      if (t.contains("intent") && !t["intent"].is_null())
        turn.intent_id = t["intent"].get<std::string>();
      d.turns.push_back(std::move(turn));
    }
    out.push_back(std::move(d));
  }
  return out;
}

GzslSplit load_split(const std::filesystem::path& path) {
  Json j = read_json_file(path);
  GzslSplit split;
  split.seen = j.at("seen").get<std::vector<std::string>>();
  split.unseen = j.at("unseen").get<std::vector<std::string>>();
  split.train = j.at("train").get<std::vector<std::string>>();
  split.test = j.at("test").get<std::vector<std::string>>();
  split.seed = j.at("seed").get<std::int64_t>();
  std::sort(split.seen.begin(), split.seen.end());
  std::sort(split.unseen.begin(), split.unseen.end());
  return split;
}

void save_split(const GzslSplit& split, const std::filesystem::path& path) {
  Json j{{"seen", split.seen},
         {"unseen", split.unseen},
         {"train", split.train},
         {"test", split.test},
         {"seed", split.seed}};
  write_json_file(path, j);
}

}  // namespace gzsl
