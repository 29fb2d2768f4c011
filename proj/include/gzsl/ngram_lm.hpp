#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace gzsl {

struct LmConfig {
  std::size_t order = 3;
  double add_k = 0.1;
  // Interpolation weights for orders 1..order, low to high; normalized.
  std::vector<double> interpolation = {0.2, 0.3, 0.5};

  void validate() const;
};

// Interpolated add-k n-gram model with sentence markers. Every conditional
// distribution is proper over the closed vocabulary (words + unknown + end
// marker), so unseen events keep nonzero mass.
class NgramLm {
 public:
  static NgramLm train(const std::vector<std::string>& sentences,
                       const LmConfig& config = {});

  // P(word | context words), interpolated across orders.
  double conditional(const std::string& word,
                     const std::vector<std::string>& context) const;

  // Natural-log probability of the sentence, end marker included.
  double sentence_logprob(const std::string& sentence) const;

  // Sum of unigram log probabilities over the same events.
  double sentence_unigram_logprob(const std::string& sentence) const;

  double unigram_logprob(const std::string& word) const;

  std::size_t vocabulary_size() const { return vocab_.size(); }
  const LmConfig& config() const { return config_; }
  std::vector<std::string> vocabulary() const;

 private:
  std::uint32_t word_id(const std::string& word) const;  // OOV maps to <unk>

  LmConfig config_;
  std::unordered_map<std::string, std::uint32_t> vocab_;  // excludes <s>
  std::uint32_t unk_id_ = 0;
  std::uint32_t end_id_ = 0;
  static constexpr std::uint32_t kBosId = 0xffffffff;

  // One table per order: context key -> (continuation counts, total).
  struct ContextCounts {
    std::map<std::uint32_t, double> counts;
    double total = 0.0;
  };
  std::vector<std::unordered_map<std::string, ContextCounts>> tables_;
};

// Length-normalized acceptability measures derived from a sentence's log
// probability and its unigram log probability.
struct Acceptability {
  double lp = 0.0;
  double lp_mean = 0.0;  // lp / length
  double lp_pen = 0.0;   // lp / ((5 + length) / 6)^0.8
  double lp_norm = 0.0;  // -lp / unigram_lp
  double slor = 0.0;     // (lp - unigram_lp) / length
};

Acceptability acceptability(double lp, double unigram_lp, std::size_t length);

Acceptability score_sentence(const NgramLm& lm, const std::string& sentence);

}  // namespace gzsl
