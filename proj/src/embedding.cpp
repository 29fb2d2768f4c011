#include "gzsl/embedding.hpp"

#include <cmath>
#include <string>

#include "gzsl/error.hpp"
#include "gzsl/rng.hpp"
#include "gzsl/text.hpp"

namespace gzsl {

void EmbeddingConfig::validate() const {
  if (dimension < 64) throw Error("embedding dimension must be >= 64");
  if (char_ngram_min > char_ngram_max)
    throw Error("char n-gram range lower bound exceeds upper bound");
}

namespace {

std::uint64_t seeded_hash(std::string_view feature, std::uint64_t seed) {
  std::uint64_t basis = 0xcbf29ce484222325ULL ^ (seed * 0x9e3779b97f4a7c15ULL);
  if (basis == 0) basis = 0xcbf29ce484222325ULL;
  return fnv1a64(feature, basis);
}

}  // namespace

std::vector<double> embed(std::string_view text, const EmbeddingConfig& config) {
  config.validate();
  std::vector<std::string> tokens = tokenize(text);
  if (tokens.empty()) throw Error("embed: text has no features");

  std::vector<double> v(config.dimension, 0.0);
  auto bump = [&](std::string_view feature) {
    v[seeded_hash(feature, config.hash_seed) % config.dimension] += 1.0;
  };

  if (config.use_word_unigrams) {
    for (const auto& t : tokens) bump("w:" + t);
  }
  // Char n-grams run over the normalized text with boundary spaces so that
  // word-initial and word-final grams are distinct features.
  std::string padded = " " + join(tokens) + " ";
  for (std::size_t n = config.char_ngram_min; n <= config.char_ngram_max; ++n) {
    if (padded.size() < n) break;
    std::string key = "c" + std::to_string(n) + ":";
    for (std::size_t i = 0; i + n <= padded.size(); ++i)
      bump(key + padded.substr(i, n));
  }

  double norm = l2_norm(v);
  if (norm == 0.0) throw Error("embed: empty feature set");
  for (auto& x : v) x /= norm;
  return v;
}

double l2_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw Error("cosine: dimension mismatch");
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  double na = l2_norm(a);
  double nb = l2_norm(b);
  if (na == 0.0 || nb == 0.0) throw Error("cosine: zero vector");
  return dot / (na * nb);
}

}  // namespace gzsl
