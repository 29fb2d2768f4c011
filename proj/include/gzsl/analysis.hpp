#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gzsl/corpus.hpp"
#include "gzsl/embedding.hpp"
#include "gzsl/jsonl.hpp"
#include "gzsl/lexicalize.hpp"
#include "gzsl/ngram_lm.hpp"
#include "gzsl/pipeline.hpp"

namespace gzsl {

// Surface/syntax factors that correlate with sentence-pair model errors.
struct StressFeatures {
  std::size_t word_overlap = 0;  // stems shared by intent text and utterance
  std::size_t length_tokens = 0;
  bool is_question = false;
  bool has_digit = false;
  std::size_t negation_count = 0;
  bool frequent_start = false;  // leading 3-gram seen > 30 times in the test set
  double label_cosine = 0.0;
};

// Counts of each leading 3-token sequence across a corpus slice.
std::map<std::string, std::size_t> leading_trigram_counts(
    const std::vector<std::string>& texts);

StressFeatures stress_features(const std::string& utterance,
                               const std::string& intent_text,
                               const std::map<std::string, std::size_t>& trigram_counts,
                               const EmbeddingConfig& embedding = {},
                               std::size_t frequent_threshold = 30);

struct BoolFactorReport {
  std::optional<double> accuracy_with;
  std::optional<double> accuracy_without;
  std::size_t count_with = 0;
  std::size_t count_without = 0;
};

struct NumericFactorReport {
  std::optional<double> mean_correct;
  std::optional<double> mean_incorrect;
};

struct StressReport {
  std::map<std::string, BoolFactorReport> bool_factors;
  std::map<std::string, NumericFactorReport> numeric_factors;
  std::size_t total = 0;
};

StressReport stress_report(const std::vector<PredictionRecord>& predictions,
                           const std::vector<StressFeatures>& features);

Json stress_report_to_json(const StressReport& report);
std::string stress_report_to_markdown(const StressReport& report);

struct ConfusionPair {
  std::string gold;
  std::string pred;
  std::size_t count = 0;
  bool shares_word = false;  // stemmed label tokens intersect
};

std::vector<ConfusionPair> confusion_pairs(
    const std::vector<PredictionRecord>& predictions,
    const std::map<std::string, std::string>& intent_labels, std::size_t top_k);

// Average acceptability of raw labels vs each template's lexicalizations.
struct AcceptabilityRow {
  std::string variant;  // "labels" or a template id
  Acceptability mean;
};

std::vector<AcceptabilityRow> acceptability_compare(
    const std::vector<std::string>& labels, const std::vector<Template>& templates,
    const NgramLm& lm, const LexicalizeOptions& options = {});

Json acceptability_table_to_json(const std::vector<AcceptabilityRow>& rows);
std::string acceptability_table_to_markdown(const std::vector<AcceptabilityRow>& rows);

}  // namespace gzsl
