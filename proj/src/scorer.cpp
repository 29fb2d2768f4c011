#include "gzsl/scorer.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "gzsl/error.hpp"
#include "gzsl/jsonl.hpp"
#include "gzsl/rng.hpp"
#include "gzsl/text.hpp"

namespace gzsl {

void ScorerConfig::validate() const {
  if (!(learning_rate > 0.0)) throw Error("scorer: learning_rate must be positive");
  if (batch_size < 1) throw Error("scorer: batch_size must be >= 1");
  if (warmup_ratio < 0.0 || warmup_ratio >= 1.0)
    throw Error("scorer: warmup_ratio must be in [0, 1)");
  if (max_len_tokens < 1) throw Error("scorer: max_len_tokens must be >= 1");
}

namespace {

double sigmoid(double z) {
  double p = z >= 0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
  // Keep outputs strictly inside (0,1) even for saturated logits.
  return std::min(std::max(p, 1e-12), 1.0 - 1e-12);
}

}  // namespace

TrainedScorer::TrainedScorer(EmbeddingConfig embedding, ScorerConfig config)
    : embedding_(embedding), config_(config) {
  embedding_.validate();
  config_.validate();
  init_params();
}

std::size_t TrainedScorer::feature_dim() const {
  return 4 * embedding_.dimension + 1;
}

std::size_t TrainedScorer::param_count() const {
  std::size_t f = feature_dim();
  std::size_t h = config_.hidden_units;
  return h == 0 ? f + 1 : h * f + h + h + 1;
}

void TrainedScorer::init_params() {
  params_.assign(param_count(), 0.0);
  if (config_.hidden_units > 0) randomize_params(config_.seed);
}

void TrainedScorer::randomize_params(std::uint64_t seed, double scale) {
  Rng rng = Rng(seed).child("scorer-init");
  double r = scale;
  if (config_.hidden_units > 0)
    r = 1.0 / std::sqrt(static_cast<double>(feature_dim()));
  for (auto& p : params_) p = (2.0 * rng.next_double() - 1.0) * r;
}

std::vector<double> TrainedScorer::pair_features(const std::string& intent_text,
                                                 const std::string& utterance) const {
  if (intent_text.empty() || utterance.empty())
    throw Error("score: empty text");
  std::vector<std::string> it = tokenize_and_truncate(intent_text, config_.max_len_tokens);
  std::vector<std::string> ut = tokenize_and_truncate(utterance, config_.max_len_tokens);
  std::vector<double> ei = embed(join(it), embedding_);
  std::vector<double> eu = embed(join(ut), embedding_);

  std::size_t d = embedding_.dimension;
  std::vector<double> x(feature_dim());
  for (std::size_t i = 0; i < d; ++i) {
    x[i] = ei[i];
    x[d + i] = eu[i];
    x[2 * d + i] = ei[i] * eu[i];
    x[3 * d + i] = std::fabs(ei[i] - eu[i]);
  }
  x[4 * d] = static_cast<double>(count_stem_overlap(it, ut));
  return x;
}

double TrainedScorer::score_features(const std::vector<double>& x) const {
  if (x.size() != feature_dim()) throw Error("score_features: wrong dimension");
  std::size_t f = feature_dim();
  std::size_t h = config_.hidden_units;
  if (h == 0) {
    double z = params_[f];  // bias
    for (std::size_t i = 0; i < f; ++i) z += params_[i] * x[i];
    return sigmoid(z);
  }
  // layout: W1 (h x f, row-major) | b1 (h) | w2 (h) | b2
  const double* w1 = params_.data();
  const double* b1 = w1 + h * f;
  const double* w2 = b1 + h;
  double b2 = w2[h];
  double z = b2;
  for (std::size_t j = 0; j < h; ++j) {
    double a = b1[j];
    const double* row = w1 + j * f;
    for (std::size_t i = 0; i < f; ++i) a += row[i] * x[i];
    z += w2[j] * std::tanh(a);
  }
  return sigmoid(z);
}

double TrainedScorer::score(const std::string& intent_text,
                            const std::string& utterance) const {
  return score_features(pair_features(intent_text, utterance));
}

namespace {

struct FeaturizedPair {
  std::vector<double> x;
  double label;
};

std::vector<FeaturizedPair> featurize(const TrainedScorer& scorer,
                                      const std::vector<TrainingPair>& pairs) {
  std::vector<FeaturizedPair> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs)
    out.push_back({scorer.pair_features(p.intent_text, p.utterance_text),
                   static_cast<double>(p.label)});
  return out;
}

double bce(double p, double y) {
  return -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
}

// Accumulates the gradient of mean-BCE over the batch into grad.
double loss_and_gradient(const TrainedScorer& scorer,
                         const std::vector<FeaturizedPair>& batch,
                         std::vector<double>* grad) {
  const auto& params = scorer.params();
  std::size_t f = scorer.feature_dim();
  std::size_t h = scorer.config().hidden_units;
  double inv_n = 1.0 / static_cast<double>(batch.size());
  if (grad) grad->assign(params.size(), 0.0);

  double loss = 0.0;
  std::vector<double> hidden(h), hidden_pre(h);
  for (const auto& item : batch) {
    const std::vector<double>& x = item.x;
    double z;
    if (h == 0) {
      z = params[f];
      for (std::size_t i = 0; i < f; ++i) z += params[i] * x[i];
    } else {
      const double* w1 = params.data();
      const double* b1 = w1 + h * f;
      const double* w2 = b1 + h;
      z = w2[h];
      for (std::size_t j = 0; j < h; ++j) {
        double a = b1[j];
        const double* row = w1 + j * f;
        for (std::size_t i = 0; i < f; ++i) a += row[i] * x[i];
        hidden_pre[j] = a;
        hidden[j] = std::tanh(a);
        z += w2[j] * hidden[j];
      }
    }
    double p = sigmoid(z);
    loss += bce(p, item.label) * inv_n;
    if (!grad) continue;

    double dz = (p - item.label) * inv_n;
    if (h == 0) {
      for (std::size_t i = 0; i < f; ++i) (*grad)[i] += dz * x[i];
      (*grad)[f] += dz;
    } else {
      double* gw1 = grad->data();
      double* gb1 = gw1 + h * f;
      double* gw2 = gb1 + h;
      const double* w2 = params.data() + h * f + h;
      for (std::size_t j = 0; j < h; ++j) {
        gw2[j] += dz * hidden[j];
        double dpre = dz * w2[j] * (1.0 - hidden[j] * hidden[j]);
        gb1[j] += dpre;
        double* grow = gw1 + j * f;
        for (std::size_t i = 0; i < f; ++i) grow[i] += dpre * x[i];
      }
      gw2[h] += dz;  // b2
    }
  }
  return loss;
}

}  // namespace

TrainedScorer train_scorer(const std::vector<TrainingPair>& pairs,
                           const ScorerConfig& config,
                           const EmbeddingConfig& embedding) {
  if (pairs.empty()) throw Error("train_scorer: no training pairs");
  bool has_pos = false, has_neg = false;
  for (const auto& p : pairs) (p.label ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg)
    throw Error("train_scorer: training set must contain both labels");

  TrainedScorer scorer(embedding, config);
  std::vector<FeaturizedPair> data = featurize(scorer, pairs);

  std::size_t n = data.size();
  std::size_t batches_per_epoch = (n + config.batch_size - 1) / config.batch_size;
  std::size_t total_steps = config.epochs * batches_per_epoch;
  if (total_steps == 0) return scorer;
  std::size_t warmup_steps =
      static_cast<std::size_t>(config.warmup_ratio * static_cast<double>(total_steps));

  auto lr_at = [&](std::size_t step) {
    if (warmup_steps > 0 && step < warmup_steps)
      return config.learning_rate * static_cast<double>(step + 1) /
             static_cast<double>(warmup_steps);
    double remaining = static_cast<double>(total_steps - step);
    double decay_span = static_cast<double>(total_steps - warmup_steps);
    return config.learning_rate * remaining / decay_span;
  };

  Rng epoch_rng = Rng(config.seed).child("epoch-shuffle");
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;

  std::vector<double> grad;
  std::vector<FeaturizedPair> batch;
  std::size_t step = 0;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    epoch_rng.shuffle(order);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < n; start += config.batch_size) {
      std::size_t end = std::min(n, start + config.batch_size);
      batch.clear();
      for (std::size_t i = start; i < end; ++i) batch.push_back(data[order[i]]);
      double loss = loss_and_gradient(scorer, batch, &grad);
      epoch_loss += loss * static_cast<double>(batch.size());
      double lr = lr_at(step++);
      auto& params = scorer.mutable_params();
      for (std::size_t i = 0; i < params.size(); ++i) params[i] -= lr * grad[i];
    }
    scorer.loss_curve_.push_back(epoch_loss / static_cast<double>(n));
  }
  return scorer;
}

double batch_loss(const TrainedScorer& scorer, const std::vector<TrainingPair>& batch) {
  if (batch.empty()) throw Error("batch_loss: empty batch");
  return loss_and_gradient(scorer, featurize(scorer, batch), nullptr);
}

std::vector<double> batch_gradient(const TrainedScorer& scorer,
                                   const std::vector<TrainingPair>& batch) {
  if (batch.empty()) throw Error("batch_gradient: empty batch");
  std::vector<double> grad;
  loss_and_gradient(scorer, featurize(scorer, batch), &grad);
  return grad;
}

double gradient_check(const TrainedScorer& scorer,
                      const std::vector<TrainingPair>& batch, double step,
                      double tolerance, std::size_t max_coords) {
  if (batch.empty()) throw Error("gradient_check: empty batch");
  if (!(step > 0.0)) throw Error("gradient_check: step must be positive");

  std::vector<FeaturizedPair> data = featurize(scorer, batch);
  std::vector<double> analytic;
  loss_and_gradient(scorer, data, &analytic);

  // Probe evenly spaced coordinates when the model is large.
  TrainedScorer probe = scorer;
  std::size_t total = probe.params().size();
  std::size_t n_probe = std::min(total, max_coords);
  double max_dev = 0.0;
  std::size_t worst = 0;
  double worst_analytic = 0.0, worst_numeric = 0.0;
  for (std::size_t c = 0; c < n_probe; ++c) {
    std::size_t i = c * total / n_probe;
    double saved = probe.mutable_params()[i];
    probe.mutable_params()[i] = saved + step;
    double plus = loss_and_gradient(probe, data, nullptr);
    probe.mutable_params()[i] = saved - step;
    double minus = loss_and_gradient(probe, data, nullptr);
    probe.mutable_params()[i] = saved;
    double numeric = (plus - minus) / (2.0 * step);
    double denom = std::max({std::fabs(analytic[i]), std::fabs(numeric), 1e-6});
    double dev = std::fabs(analytic[i] - numeric) / denom;
    if (dev > max_dev) {
      max_dev = dev;
      worst = i;
      worst_analytic = analytic[i];
      worst_numeric = numeric;
    }
  }
  if (max_dev > tolerance) {
    throw Error("gradient check failed: coordinate " + std::to_string(worst) +
                " analytic=" + std::to_string(worst_analytic) +
                " numeric=" + std::to_string(worst_numeric) +
                " rel_dev=" + std::to_string(max_dev));
  }
  return max_dev;
}

namespace {

Json embedding_to_json(const EmbeddingConfig& e) {
  return Json{{"dimension", e.dimension},
              {"char_ngram_min", e.char_ngram_min},
              {"char_ngram_max", e.char_ngram_max},
              {"use_word_unigrams", e.use_word_unigrams},
              {"hash_seed", e.hash_seed}};
}

EmbeddingConfig embedding_from_json(const Json& j) {
  EmbeddingConfig e;
  e.dimension = j.at("dimension").get<std::size_t>();
  e.char_ngram_min = j.at("char_ngram_min").get<std::size_t>();
  e.char_ngram_max = j.at("char_ngram_max").get<std::size_t>();
  e.use_word_unigrams = j.at("use_word_unigrams").get<bool>();
  e.hash_seed = j.at("hash_seed").get<std::uint64_t>();
  return e;
}

Json scorer_config_to_json(const ScorerConfig& c) {
  return Json{{"learning_rate", c.learning_rate},
              {"batch_size", c.batch_size},
              {"warmup_ratio", c.warmup_ratio},
              {"max_len_tokens", c.max_len_tokens},
              {"epochs", c.epochs},
              {"hidden_units", c.hidden_units},
              {"seed", c.seed}};
}

ScorerConfig scorer_config_from_json(const Json& j) {
  ScorerConfig c;
  c.learning_rate = j.at("learning_rate").get<double>();
  c.batch_size = j.at("batch_size").get<std::size_t>();
  c.warmup_ratio = j.at("warmup_ratio").get<double>();
  c.max_len_tokens = j.at("max_len_tokens").get<std::size_t>();
  c.epochs = j.at("epochs").get<std::size_t>();
  c.hidden_units = j.at("hidden_units").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

constexpr int kScorerFormatVersion = 1;

}  // namespace

void save_scorer(const TrainedScorer& scorer, const std::filesystem::path& path) {
  Json j{{"format", "gzsl-scorer"},
         {"version", kScorerFormatVersion},
         {"embedding", embedding_to_json(scorer.embedding())},
         {"config", scorer_config_to_json(scorer.config())},
         {"params", scorer.params()},
         {"loss_curve", scorer.loss_curve()}};
  write_json_file(path, j);
}

TrainedScorer load_scorer(const std::filesystem::path& path) {
  Json j = read_json_file(path);
  if (j.value("format", "") != "gzsl-scorer")
    throw Error(path.string() + ": not a scorer file");
  if (j.at("version").get<int>() != kScorerFormatVersion)
    throw Error(path.string() + ": unsupported scorer version");
  TrainedScorer scorer(embedding_from_json(j.at("embedding")),
                       scorer_config_from_json(j.at("config")));
  scorer.params_ = j.at("params").get<std::vector<double>>();
  if (scorer.params_.size() != scorer.param_count())
    throw Error(path.string() + ": parameter count mismatch");
  scorer.loss_curve_ = j.at("loss_curve").get<std::vector<double>>();
  return scorer;
}

void write_score_requests(const std::vector<ScoreRequest>& requests,
                          const std::filesystem::path& path) {
  std::vector<Json> records;
  records.reserve(requests.size());
  for (const auto& r : requests)
    records.push_back(Json{{"id", r.id},
                           {"intent_text", r.intent_text},
                           {"utterance", r.utterance}});
  write_jsonl(path, records);
}

std::map<std::string, double> read_score_responses(
    const std::filesystem::path& path, const std::vector<ScoreRequest>& requests) {
  std::map<std::string, double> scores;
  for (const auto& rec : read_jsonl(path)) {
    if (!rec.contains("id")) throw Error(path.string() + ": response missing id field");
    std::string id = rec.at("id").get<std::string>();
    double p = rec.at("p_positive").get<double>();
    if (!(p > 0.0) || !(p < 1.0))
      throw Error("response " + id + ": p_positive " + std::to_string(p) +
                  " outside (0, 1)");
    scores[id] = p;
  }
  for (const auto& r : requests) {
    if (!scores.count(r.id)) throw Error("response missing id: " + r.id);
  }
  return scores;
}

ExternalScorer::ExternalScorer(const std::vector<ScoreRequest>& requests,
                               const std::map<std::string, double>& responses) {
  for (const auto& r : requests) {
    auto it = responses.find(r.id);
    if (it == responses.end()) throw Error("response missing id: " + r.id);
    table_[{r.intent_text, r.utterance}] = it->second;
  }
}

double ExternalScorer::score(const std::string& intent_text,
                             const std::string& utterance) const {
  auto it = table_.find({intent_text, utterance});
  if (it == table_.end())
    throw Error("external scorer has no score for pair (" + intent_text + ", " +
                utterance + ")");
  return it->second;
}

}  // namespace gzsl
