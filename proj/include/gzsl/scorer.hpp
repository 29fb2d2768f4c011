#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gzsl/embedding.hpp"
#include "gzsl/sampling.hpp"

namespace gzsl {

struct ScorerConfig {
  double learning_rate = 0.1;
  std::size_t batch_size = 16;
  double warmup_ratio = 0.1;
  std::size_t max_len_tokens = 30;
  std::size_t epochs = 20;
  std::size_t hidden_units = 0;  // 0 = linear head
  std::uint64_t seed = 11;

  void validate() const;
};

// Anything that can assign P(in-class | intent text, utterance).
class PairScorer {
 public:
  virtual ~PairScorer() = default;
  virtual double score(const std::string& intent_text,
                       const std::string& utterance) const = 0;
};

// Shallow classifier over interaction features of the two texts:
// [e_i; e_u; e_i*e_u; |e_i-e_u|; stem-overlap count], sigmoid output.
class TrainedScorer : public PairScorer {
 public:
  TrainedScorer() = default;
  TrainedScorer(EmbeddingConfig embedding, ScorerConfig config);

  double score(const std::string& intent_text,
               const std::string& utterance) const override;

  std::vector<double> pair_features(const std::string& intent_text,
                                    const std::string& utterance) const;
  double score_features(const std::vector<double>& features) const;

  std::size_t feature_dim() const;
  std::size_t param_count() const;

  const EmbeddingConfig& embedding() const { return embedding_; }
  const ScorerConfig& config() const { return config_; }
  const std::vector<double>& params() const { return params_; }
  std::vector<double>& mutable_params() { return params_; }
  const std::vector<double>& loss_curve() const { return loss_curve_; }

  // Uniform(-1/sqrt(fan_in), +) init for the hidden layer, zeros for linear.
  void init_params();
  void randomize_params(std::uint64_t seed, double scale = 0.05);

 private:
  friend TrainedScorer train_scorer(const std::vector<TrainingPair>&,
                                    const ScorerConfig&, const EmbeddingConfig&);
  friend TrainedScorer load_scorer(const std::filesystem::path&);

  EmbeddingConfig embedding_;
  ScorerConfig config_;
  std::vector<double> params_;
  std::vector<double> loss_curve_;  // mean BCE per epoch
};

// Mini-batch gradient descent on binary cross-entropy with linear warmup to
// the configured rate, then linear decay to zero. Deterministic under seed.
TrainedScorer train_scorer(const std::vector<TrainingPair>& pairs,
                           const ScorerConfig& config,
                           const EmbeddingConfig& embedding = {});

// Mean BCE of the batch and its gradient w.r.t. every parameter.
double batch_loss(const TrainedScorer& scorer, const std::vector<TrainingPair>& batch);
std::vector<double> batch_gradient(const TrainedScorer& scorer,
                                   const std::vector<TrainingPair>& batch);

// Compares analytic and central finite-difference gradients on up to
// max_coords coordinates; returns the max relative deviation and throws with
// the worst coordinate when it exceeds tolerance.
double gradient_check(const TrainedScorer& scorer,
                      const std::vector<TrainingPair>& batch, double step = 1e-5,
                      double tolerance = 1e-4, std::size_t max_coords = 256);

void save_scorer(const TrainedScorer& scorer, const std::filesystem::path& path);
TrainedScorer load_scorer(const std::filesystem::path& path);

// --- external scorer protocol -------------------------------------------
// Request JSONL: {"id","intent_text","utterance"}; response: {"id","p_positive"}.

struct ScoreRequest {
  std::string id;
  std::string intent_text;
  std::string utterance;
};

void write_score_requests(const std::vector<ScoreRequest>& requests,
                          const std::filesystem::path& path);

// Validates full coverage of the request ids and p in the open (0,1) range.
std::map<std::string, double> read_score_responses(
    const std::filesystem::path& path, const std::vector<ScoreRequest>& requests);

// Serves scores from a response table keyed by (intent text, utterance).
class ExternalScorer : public PairScorer {
 public:
  ExternalScorer(const std::vector<ScoreRequest>& requests,
                 const std::map<std::string, double>& responses);

  double score(const std::string& intent_text,
               const std::string& utterance) const override;

 private:
  std::map<std::pair<std::string, std::string>, double> table_;
};

}  // namespace gzsl
