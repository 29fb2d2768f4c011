#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gzsl/corpus.hpp"
#include "gzsl/embedding.hpp"
#include "gzsl/rng.hpp"

namespace gzsl {

enum class PairOrigin { kPositive, kRandomNeg, kHardNeg };

struct TrainingPair {
  std::string intent_text;
  std::string utterance_text;
  int label = 0;  // 1 = in-class
  PairOrigin origin = PairOrigin::kPositive;
};

enum class SamplingStrategy { kRandomIS, kRandomUS, kHardIS, kHardUS };

SamplingStrategy parse_strategy(const std::string& name);
std::string strategy_name(SamplingStrategy s);

struct SamplingConfig {
  SamplingStrategy strategy = SamplingStrategy::kRandomUS;
  std::size_t k = 5;        // negatives per positive
  std::size_t top_n = 100;  // hard pool size
  std::uint64_t seed = 11;

  void validate() const;
};

// Flagged when a sampler had fewer candidates than requested.
struct SamplingStats {
  std::size_t shortage_events = 0;
  std::size_t with_replacement_events = 0;
};

// One positive pair per train utterance, using the mapped intent text.
std::vector<TrainingPair> positive_pairs(
    const Dataset& dataset, const GzslSplit& split,
    const std::map<std::string, std::string>& intent_text_map);

// k out-of-class train utterances, uniform without replacement. Fewer than
// k candidates: returns them all and counts a shortage.
std::vector<const Utterance*> random_negative_utterances(
    const std::string& intent_id, const std::vector<const Utterance*>& train,
    std::size_t k, Rng& rng, SamplingStats* stats);

// k intents from seen \ {gold}, uniform; falls back to replacement when the
// pool is smaller than k (flagged). A single seen intent is an error.
std::vector<std::string> random_negative_intents(
    const std::string& gold_intent, const std::vector<std::string>& seen,
    std::size_t k, Rng& rng, SamplingStats* stats);

// For each train utterance: the top-min(top_n, available) out-of-class train
// utterances by embedding cosine, ties broken by utterance id.
std::map<std::string, std::vector<std::string>> mine_hard_negative_utterances(
    const Dataset& dataset, const GzslSplit& split, const EmbeddingConfig& embedding,
    std::size_t top_n = 100);

// k intents from seen \ {gold}, without replacement, probability proportional
// to the given similarity clamped from below at epsilon.
std::vector<std::string> hard_negative_intents(
    const std::string& gold_intent,
    const std::map<std::string, double>& similarity_to_gold, std::size_t k,
    Rng& rng, double epsilon = 1e-3);

// Positives plus exactly k negatives per positive under the configured
// strategy, shuffled deterministically.
std::vector<TrainingPair> build_training_set(
    const Dataset& dataset, const GzslSplit& split,
    const std::map<std::string, std::string>& intent_text_map,
    const SamplingConfig& config, const EmbeddingConfig& embedding,
    SamplingStats* stats = nullptr);

// Audit dump: JSONL {"intent_text","utterance","label","origin"}.
void dump_pairs(const std::vector<TrainingPair>& pairs,
                const std::filesystem::path& path);

}  // namespace gzsl
