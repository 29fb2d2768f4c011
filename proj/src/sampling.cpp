#include "gzsl/sampling.hpp"

#include <algorithm>

#include "gzsl/error.hpp"
#include "gzsl/jsonl.hpp"

namespace gzsl {

SamplingStrategy parse_strategy(const std::string& name) {
  if (name == "random_is") return SamplingStrategy::kRandomIS;
  if (name == "random_us") return SamplingStrategy::kRandomUS;
  if (name == "hard_is") return SamplingStrategy::kHardIS;
  if (name == "hard_us") return SamplingStrategy::kHardUS;
  throw Error("unknown sampling strategy: " + name +
              " (expected random_is|random_us|hard_is|hard_us)");
}

std::string strategy_name(SamplingStrategy s) {
  switch (s) {
    case SamplingStrategy::kRandomIS: return "random_is";
    case SamplingStrategy::kRandomUS: return "random_us";
    case SamplingStrategy::kHardIS: return "hard_is";
    case SamplingStrategy::kHardUS: return "hard_us";
  }
  throw Error("invalid strategy value");
}

void SamplingConfig::validate() const {
  if (k < 1) throw Error("sampling: k must be >= 1");
  if (top_n < k) throw Error("sampling: top_n must be >= k");
}

namespace {

// Train utterances in sorted-id order; the canonical processing order.
std::vector<const Utterance*> train_utterances(const Dataset& dataset,
                                               const GzslSplit& split) {
  std::map<std::string, const Utterance*> by_id;
  for (const auto& u : dataset.utterances) by_id[u.id] = &u;
  std::vector<const Utterance*> out;
  out.reserve(split.train.size());
  std::vector<std::string> ids = split.train;
  std::sort(ids.begin(), ids.end());
  for (const auto& id : ids) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw Error("train utterance not in dataset: " + id);
    out.push_back(it->second);
  }
  return out;
}

const std::string& intent_text(const std::map<std::string, std::string>& map,
                               const std::string& intent_id) {
  auto it = map.find(intent_id);
  if (it == map.end()) throw Error("no intent text for " + intent_id);
  if (it->second.empty()) throw Error("empty intent text for " + intent_id);
  return it->second;
}

}  // namespace

std::vector<TrainingPair> positive_pairs(
    const Dataset& dataset, const GzslSplit& split,
    const std::map<std::string, std::string>& intent_text_map) {
  std::vector<TrainingPair> pairs;
  for (const Utterance* u : train_utterances(dataset, split)) {
    pairs.push_back({intent_text(intent_text_map, u->intent_id), u->text, 1,
                     PairOrigin::kPositive});
  }
  return pairs;
}

std::vector<const Utterance*> random_negative_utterances(
    const std::string& intent_id, const std::vector<const Utterance*>& train,
    std::size_t k, Rng& rng, SamplingStats* stats) {
  std::vector<const Utterance*> candidates;
  for (const Utterance* u : train)
    if (u->intent_id != intent_id) candidates.push_back(u);
  if (candidates.size() <= k) {
    if (candidates.size() < k && stats) stats->shortage_events++;
    return candidates;
  }
  std::vector<const Utterance*> out;
  out.reserve(k);
  for (std::size_t idx : rng.sample_without_replacement(candidates.size(), k))
    out.push_back(candidates[idx]);
  return out;
}

std::vector<std::string> random_negative_intents(
    const std::string& gold_intent, const std::vector<std::string>& seen,
    std::size_t k, Rng& rng, SamplingStats* stats) {
  std::vector<std::string> candidates;
  for (const auto& id : seen)
    if (id != gold_intent) candidates.push_back(id);
  if (candidates.empty())
    throw Error("random_negative_intents: no other seen intent besides " + gold_intent);
  std::vector<std::string> out;
  out.reserve(k);
  if (candidates.size() < k) {
    if (stats) stats->with_replacement_events++;
    for (std::size_t i = 0; i < k; ++i)
      out.push_back(candidates[rng.next_below(candidates.size())]);
    return out;
  }
  for (std::size_t idx : rng.sample_without_replacement(candidates.size(), k))
    out.push_back(candidates[idx]);
  return out;
}

std::map<std::string, std::vector<std::string>> mine_hard_negative_utterances(
    const Dataset& dataset, const GzslSplit& split, const EmbeddingConfig& embedding,
    std::size_t top_n) {
  std::vector<const Utterance*> train = train_utterances(dataset, split);
  std::vector<std::vector<double>> vectors;
  vectors.reserve(train.size());
  for (const Utterance* u : train) vectors.push_back(embed(u->text, embedding));

  std::map<std::string, std::vector<std::string>> pools;
  for (std::size_t i = 0; i < train.size(); ++i) {
    std::vector<std::pair<double, std::string>> scored;
    for (std::size_t j = 0; j < train.size(); ++j) {
      if (train[j]->intent_id == train[i]->intent_id) continue;
      scored.emplace_back(cosine(vectors[i], vectors[j]), train[j]->id);
    }
    std::size_t keep = std::min(top_n, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep),
                      scored.end(), [](const auto& a, const auto& b) {
                        if (a.first != b.first) return a.first > b.first;
                        return a.second < b.second;
                      });
    std::vector<std::string>& pool = pools[train[i]->id];
    pool.reserve(keep);
    for (std::size_t r = 0; r < keep; ++r) pool.push_back(scored[r].second);
  }
  return pools;
}

std::vector<std::string> hard_negative_intents(
    const std::string& gold_intent,
    const std::map<std::string, double>& similarity_to_gold, std::size_t k,
    Rng& rng, double epsilon) {
  std::vector<std::string> ids;
  std::vector<double> weights;
  for (const auto& [id, sim] : similarity_to_gold) {
    if (id == gold_intent) continue;
    ids.push_back(id);
    weights.push_back(std::max(sim, epsilon));
  }
  if (ids.empty())
    throw Error("hard_negative_intents: no candidate intents besides " + gold_intent);
  std::size_t take = std::min(k, ids.size());
  std::vector<std::string> out;
  out.reserve(take);
  for (std::size_t idx : rng.weighted_sample_without_replacement(weights, take))
    out.push_back(ids[idx]);
  return out;
}

std::vector<TrainingPair> build_training_set(
    const Dataset& dataset, const GzslSplit& split,
    const std::map<std::string, std::string>& intent_text_map,
    const SamplingConfig& config, const EmbeddingConfig& embedding,
    SamplingStats* stats) {
  config.validate();
  std::vector<const Utterance*> train = train_utterances(dataset, split);
  std::map<std::string, const Utterance*> train_by_id;
  for (const Utterance* u : train) train_by_id[u->id] = u;

  std::vector<TrainingPair> pairs = positive_pairs(dataset, split, intent_text_map);

  // Hard-strategy precomputation. Each positive draws from its own child
  // stream keyed by utterance id, so pair sets do not depend on what other
  // intents exist in the dataset.
  std::map<std::string, std::vector<std::string>> pools;
  std::map<std::string, std::map<std::string, double>> label_sims;
  if (config.strategy == SamplingStrategy::kHardUS) {
    pools = mine_hard_negative_utterances(dataset, split, embedding, config.top_n);
  } else if (config.strategy == SamplingStrategy::kHardIS) {
    std::map<std::string, std::vector<double>> label_emb;
    for (const auto& id : split.seen) {
      const Intent* intent = dataset.find_intent(id);
      if (!intent) throw Error("seen intent not in dataset: " + id);
      label_emb[id] = embed(intent_text(intent_text_map, id), embedding);
    }
    for (const auto& a : split.seen) {
      auto& sims = label_sims[a];
      for (const auto& b : split.seen) {
        if (a == b) continue;
        sims[b] = cosine(label_emb[a], label_emb[b]);
      }
    }
  }

  Rng base(config.seed);
  std::vector<TrainingPair> negatives;
  for (const Utterance* u : train) {
    Rng rng = base.child("neg:" + u->id);
    switch (config.strategy) {
      case SamplingStrategy::kRandomUS: {
        auto negs = random_negative_utterances(u->intent_id, train, config.k, rng, stats);
        for (const Utterance* n : negs)
          negatives.push_back({intent_text(intent_text_map, u->intent_id), n->text, 0,
                               PairOrigin::kRandomNeg});
        break;
      }
      case SamplingStrategy::kRandomIS: {
        auto negs = random_negative_intents(u->intent_id, split.seen, config.k, rng, stats);
        for (const auto& id : negs)
          negatives.push_back({intent_text(intent_text_map, id), u->text, 0,
                               PairOrigin::kRandomNeg});
        break;
      }
      case SamplingStrategy::kHardUS: {
        const auto& pool = pools[u->id];
        if (pool.size() < config.k && stats) stats->shortage_events++;
        std::size_t take = std::min(config.k, pool.size());
        for (std::size_t idx : rng.sample_without_replacement(pool.size(), take)) {
          const Utterance* n = train_by_id.at(pool[idx]);
          negatives.push_back({intent_text(intent_text_map, u->intent_id), n->text, 0,
                               PairOrigin::kHardNeg});
        }
        break;
      }
      case SamplingStrategy::kHardIS: {
        auto negs = hard_negative_intents(u->intent_id, label_sims[u->intent_id],
                                          config.k, rng);
        if (negs.size() < config.k && stats) stats->shortage_events++;
        for (const auto& id : negs)
          negatives.push_back({intent_text(intent_text_map, id), u->text, 0,
                               PairOrigin::kHardNeg});
        break;
      }
    }
  }

  pairs.insert(pairs.end(), negatives.begin(), negatives.end());
  Rng shuffler = base.child("shuffle");
  shuffler.shuffle(pairs);
  return pairs;
}

void dump_pairs(const std::vector<TrainingPair>& pairs,
                const std::filesystem::path& path) {
  std::vector<Json> records;
  records.reserve(pairs.size());
  for (const auto& p : pairs) {
    const char* origin = p.origin == PairOrigin::kPositive    ? "positive"
                         : p.origin == PairOrigin::kRandomNeg ? "random_neg"
                                                              : "hard_neg";
    records.push_back(Json{{"intent_text", p.intent_text},
                           {"utterance", p.utterance_text},
                           {"label", p.label},
                           {"origin", origin}});
  }
  write_jsonl(path, records);
}

}  // namespace gzsl
