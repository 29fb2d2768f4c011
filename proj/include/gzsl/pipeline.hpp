#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gzsl/corpus.hpp"
#include "gzsl/dataless.hpp"
#include "gzsl/lexicalize.hpp"
#include "gzsl/metrics.hpp"
#include "gzsl/sampling.hpp"
#include "gzsl/scorer.hpp"

namespace gzsl {

enum class IntentTextKind { kLabel, kDescription, kTemplate };

// What string stands in for an intent, both in training pairs and at
// inference. "label" uses the raw machine label, "description" the inventory
// description, "template" a lexicalized sentence.
struct IntentTextSource {
  IntentTextKind kind = IntentTextKind::kLabel;
  std::string template_id = "d1";
  LexicalizeOptions lex_options;
};

IntentTextKind parse_intent_text_kind(const std::string& name);
std::string intent_text_kind_name(IntentTextKind kind);

std::map<std::string, std::string> build_intent_texts(
    const Dataset& dataset, const std::vector<std::string>& intent_ids,
    const IntentTextSource& source,
    const std::vector<Template>& templates = builtin_templates());

struct GzslOptions {
  IntentTextSource text_source;
  SamplingConfig sampling;
  ScorerConfig scorer;
  EmbeddingConfig embedding;
  std::vector<Template> templates = builtin_templates();
};

// A trained scorer plus everything inference needs: candidate texts over
// seen+unseen and the split it was trained against.
struct GzslModel {
  std::shared_ptr<const PairScorer> scorer;
  std::map<std::string, std::string> intent_text_map;  // covers seen + unseen
  GzslSplit split;
  GzslOptions options;
  SamplingStats sampling_stats;
};

// Builds pairs from seen intents only and fits the reference scorer.
GzslModel train_gzsl(const Dataset& dataset, const GzslSplit& split,
                     const GzslOptions& options);

// Trains on paraphrased lexicalizations of the seen intents instead of real
// utterances; the test partition stays untouched.
GzslModel train_gzsl_dataless(const Dataset& dataset, const GzslSplit& split,
                              const GzslOptions& options,
                              std::size_t n_per_intent = 25,
                              const std::vector<ParaphraseFamily>& families =
                                  all_families());

// Same pipeline with an externally supplied scorer (no training here).
GzslModel assemble_gzsl(const Dataset& dataset, const GzslSplit& split,
                        const GzslOptions& options,
                        std::shared_ptr<const PairScorer> scorer);

struct Prediction {
  std::string intent_id;
  std::map<std::string, double> scores;  // over seen + unseen
};

// Argmax of P(1 | intent text, utterance) over seen+unseen candidates,
// ties broken by lexicographically smallest intent id.
Prediction predict(const GzslModel& model, const std::string& utterance);

struct PredictionRecord {
  std::string utterance_id;
  std::string gold;
  std::string pred;
  std::map<std::string, double> scores;
};

std::vector<PredictionRecord> predict_test_set(const GzslModel& model,
                                               const Dataset& dataset);

// When a fingerprint/seed is given, every record carries it.
void save_predictions(const std::vector<PredictionRecord>& predictions,
                      const std::filesystem::path& path,
                      const std::string& config_fingerprint = "",
                      std::optional<std::int64_t> seed = std::nullopt);

void save_model(const GzslModel& model, const std::filesystem::path& path);
GzslModel load_model(const std::filesystem::path& path);

struct ExperimentOptions {
  GzslOptions model;
  std::size_t n_unseen = 0;           // ignored when fixed_split is set
  double train_fraction = 0.7;
  std::optional<GzslSplit> fixed_split;
  std::vector<std::int64_t> seeds = {11, 12, 13, 14, 15, 16, 17, 18, 19, 20};
  std::string config_fingerprint;
  bool dataless = false;
  std::size_t dataless_n_per_intent = 25;
};

// One full train/predict/evaluate cycle per seed, aggregated mean and
// sample std per partition and metric.
EvalReport run_experiment(const Dataset& dataset, const ExperimentOptions& options);

}  // namespace gzsl
