#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gzsl/jsonl.hpp"
#include "gzsl/pipeline.hpp"

namespace gzsl {

struct SweepGrid {
  std::vector<double> learning_rates = {2e-5, 5e-5};
  std::vector<std::size_t> batch_sizes = {8, 16};
  std::vector<double> warmup_ratios = {0.10, 0.15};
  std::vector<std::size_t> max_lens = {20, 30, 40};
  std::vector<std::size_t> ks = {5, 7};

  void validate() const;
};

struct SweepPoint {
  double learning_rate;
  std::size_t batch_size;
  double warmup_ratio;
  std::size_t max_len_tokens;
  std::size_t k;
};

// Cartesian product in declaration order; the default grid has 48 points.
std::vector<SweepPoint> expand_grid(const SweepGrid& grid);

// Single structured config file driving every subcommand.
struct ExperimentConfig {
  std::string utterances_path;
  std::string intents_path;
  std::optional<std::string> split_path;
  std::optional<std::string> templates_path;

  std::string intent_text_source = "label";  // label|description|template
  std::string template_id = "d1";
  bool capitalize_first = false;
  bool question_mark = false;

  std::string strategy = "random_us";
  std::size_t k = 5;
  std::size_t top_n = 100;

  ScorerConfig scorer;
  EmbeddingConfig embedding;

  std::size_t n_unseen = 0;
  double train_fraction = 0.7;
  std::vector<std::int64_t> seeds = {11, 12, 13, 14, 15, 16, 17, 18, 19, 20};

  bool dataless = false;
  std::size_t dataless_n_per_intent = 25;

  SweepGrid sweep;
  std::size_t sweep_runs_per_point = 5;

  std::string output_dir = "out";
};

ExperimentConfig config_from_json(const Json& j);
Json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);

// FNV-1a over the canonical JSON form, hex encoded.
std::string config_fingerprint(const ExperimentConfig& config);

// Resolves templates/split files and produces runnable options.
ExperimentOptions to_experiment_options(const ExperimentConfig& config);

struct SweepRow {
  SweepPoint point;
  EvalReport report;
};

// Runs every grid point over runs_per_point seeds; rows come back ranked by
// overall weighted F1.
std::vector<SweepRow> run_sweep(const Dataset& dataset,
                                const ExperimentConfig& config);

Json sweep_to_json(const std::vector<SweepRow>& rows,
                   const std::string& fingerprint);
std::string sweep_to_markdown(const std::vector<SweepRow>& rows);

}  // namespace gzsl
