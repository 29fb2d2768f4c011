#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace gzsl {

struct EmbeddingConfig {
  std::size_t dimension = 2048;
  std::size_t char_ngram_min = 3;
  std::size_t char_ngram_max = 5;
  bool use_word_unigrams = true;
  std::uint64_t hash_seed = 42;

  void validate() const;
};

// Hashed bag of word unigrams and character n-grams, tf-weighted and
// L2-normalized. Deterministic under hash_seed; whitespace-insensitive.
std::vector<double> embed(std::string_view text, const EmbeddingConfig& config);

double cosine(const std::vector<double>& a, const std::vector<double>& b);

double l2_norm(const std::vector<double>& v);

}  // namespace gzsl
