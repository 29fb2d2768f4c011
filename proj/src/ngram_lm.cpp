#include "gzsl/ngram_lm.hpp"

#include <algorithm>
#include <cmath>

#include "gzsl/error.hpp"
#include "gzsl/text.hpp"

namespace gzsl {

void LmConfig::validate() const {
  if (order < 1) throw Error("lm: order must be >= 1");
  if (!(add_k > 0.0)) throw Error("lm: add_k must be positive");
  if (interpolation.size() != order)
    throw Error("lm: need one interpolation weight per order");
  double total = 0.0;
  for (double w : interpolation) {
    if (!(w > 0.0)) throw Error("lm: interpolation weights must be positive");
    total += w;
  }
  if (total <= 0.0) throw Error("lm: interpolation weights must sum to > 0");
}

namespace {

std::string context_key(const std::vector<std::uint32_t>& ids, std::size_t end,
                        std::size_t len) {
  // Contexts are id sequences; encode fixed-width for map keys.
  std::string key;
  key.reserve(len * 4);
  for (std::size_t i = end - len; i < end; ++i) {
    std::uint32_t v = ids[i];
    key.push_back(static_cast<char>(v & 0xff));
    key.push_back(static_cast<char>((v >> 8) & 0xff));
    key.push_back(static_cast<char>((v >> 16) & 0xff));
    key.push_back(static_cast<char>((v >> 24) & 0xff));
  }
  return key;
}

}  // namespace

NgramLm NgramLm::train(const std::vector<std::string>& sentences,
                       const LmConfig& config) {
  config.validate();
  if (sentences.empty()) throw Error("lm: empty training corpus");

  NgramLm lm;
  lm.config_ = config;
  double norm = 0.0;
  for (double w : config.interpolation) norm += w;
  for (auto& w : lm.config_.interpolation) w /= norm;

  // Vocabulary: every training word plus <unk> and the end marker.
  std::vector<std::vector<std::string>> tokenized;
  bool any_tokens = false;
  for (const auto& s : sentences) {
    tokenized.push_back(tokenize(s));
    if (!tokenized.back().empty()) any_tokens = true;
    for (const auto& t : tokenized.back())
      if (!lm.vocab_.count(t))
        lm.vocab_.emplace(t, static_cast<std::uint32_t>(lm.vocab_.size()));
  }
  if (!any_tokens) throw Error("lm: corpus has no tokens");
  lm.unk_id_ = static_cast<std::uint32_t>(lm.vocab_.size());
  lm.vocab_.emplace("<unk>", lm.unk_id_);
  lm.end_id_ = static_cast<std::uint32_t>(lm.vocab_.size());
  lm.vocab_.emplace("</s>", lm.end_id_);

  lm.tables_.resize(config.order);
  for (const auto& tokens : tokenized) {
    if (tokens.empty()) continue;
    std::vector<std::uint32_t> ids(config.order - 1, kBosId);
    for (const auto& t : tokens) ids.push_back(lm.vocab_.at(t));
    ids.push_back(lm.end_id_);
    // events start after the BOS padding
    for (std::size_t pos = config.order - 1; pos < ids.size(); ++pos) {
      for (std::size_t o = 1; o <= config.order; ++o) {
        ContextCounts& cc = lm.tables_[o - 1][context_key(ids, pos, o - 1)];
        cc.counts[ids[pos]] += 1.0;
        cc.total += 1.0;
      }
    }
  }
  return lm;
}

std::uint32_t NgramLm::word_id(const std::string& word) const {
  auto it = vocab_.find(word);
  return it == vocab_.end() ? unk_id_ : it->second;
}

double NgramLm::conditional(const std::string& word,
                            const std::vector<std::string>& context) const {
  std::vector<std::uint32_t> ids;
  for (const auto& c : context) ids.push_back(word_id(c));
  std::uint32_t w = word_id(word);

  double v = static_cast<double>(vocab_.size());
  double p = 0.0;
  for (std::size_t o = 1; o <= config_.order; ++o) {
    std::size_t ctx_len = o - 1;
    double count = 0.0, total = 0.0;
    if (ctx_len <= ids.size()) {
      auto it = tables_[o - 1].find(context_key(ids, ids.size(), ctx_len));
      if (it != tables_[o - 1].end()) {
        total = it->second.total;
        auto c = it->second.counts.find(w);
        if (c != it->second.counts.end()) count = c->second;
      }
    }
    double p_o = (count + config_.add_k) / (total + config_.add_k * v);
    p += config_.interpolation[o - 1] * p_o;
  }
  return p;
}

double NgramLm::sentence_logprob(const std::string& sentence) const {
  std::vector<std::string> tokens = tokenize(sentence);
  if (tokens.empty()) throw Error("lm: sentence has no tokens");
  std::vector<std::uint32_t> ids(config_.order - 1, kBosId);
  for (const auto& t : tokens) ids.push_back(word_id(t));
  ids.push_back(end_id_);

  double v = static_cast<double>(vocab_.size());
  double lp = 0.0;
  for (std::size_t pos = config_.order - 1; pos < ids.size(); ++pos) {
    double p = 0.0;
    for (std::size_t o = 1; o <= config_.order; ++o) {
      double count = 0.0, total = 0.0;
      auto it = tables_[o - 1].find(context_key(ids, pos, o - 1));
      if (it != tables_[o - 1].end()) {
        total = it->second.total;
        auto c = it->second.counts.find(ids[pos]);
        if (c != it->second.counts.end()) count = c->second;
      }
      p += config_.interpolation[o - 1] * (count + config_.add_k) / (total + config_.add_k * v);
    }
    lp += std::log(p);
  }
  return lp;
}

double NgramLm::unigram_logprob(const std::string& word) const {
  std::uint32_t w = word_id(word);
  double v = static_cast<double>(vocab_.size());
  const auto& root = tables_[0];
  double count = 0.0, total = 0.0;
  auto it = root.find(std::string());
  if (it != root.end()) {
    total = it->second.total;
    auto c = it->second.counts.find(w);
    if (c != it->second.counts.end()) count = c->second;
  }
  return std::log((count + config_.add_k) / (total + config_.add_k * v));
}

double NgramLm::sentence_unigram_logprob(const std::string& sentence) const {
  std::vector<std::string> tokens = tokenize(sentence);
  if (tokens.empty()) throw Error("lm: sentence has no tokens");
  double lp = 0.0;
  for (const auto& t : tokens) lp += unigram_logprob(t);
  lp += unigram_logprob("</s>");
  return lp;
}

std::vector<std::string> NgramLm::vocabulary() const {
  std::vector<std::string> words(vocab_.size());
  for (const auto& [w, id] : vocab_) words[id] = w;
  return words;
}

Acceptability acceptability(double lp, double unigram_lp, std::size_t length) {
  if (length == 0) throw Error("acceptability: zero-length sentence");
  Acceptability a;
  a.lp = lp;
  double len = static_cast<double>(length);
  a.lp_mean = lp / len;
  a.lp_pen = lp / std::pow((5.0 + len) / 6.0, 0.8);
  if (!(unigram_lp < 0.0)) throw Error("acceptability: unigram lp must be negative");
  a.lp_norm = -lp / unigram_lp;
  a.slor = (lp - unigram_lp) / len;
  return a;
}

Acceptability score_sentence(const NgramLm& lm, const std::string& sentence) {
  std::size_t length = tokenize(sentence).size();
  return acceptability(lm.sentence_logprob(sentence),
                       lm.sentence_unigram_logprob(sentence), length);
}

}  // namespace gzsl
