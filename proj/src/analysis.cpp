#include "gzsl/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>

#include "gzsl/error.hpp"
#include "gzsl/text.hpp"

namespace gzsl {

namespace {

const std::set<std::string>& interrogative_words() {
  static const std::set<std::string> words = {
      "what", "how",  "when", "where", "who",  "which", "why",
      "do",   "does", "can",  "could", "is",   "are",   "will", "would"};
  return words;
}

const std::set<std::string>& negation_words() {
  static const std::set<std::string> words = {"not", "no", "never", "none"};
  return words;
}

bool trailing_question_mark(const std::string& text) {
  for (auto it = text.rbegin(); it != text.rend(); ++it) {
    if (std::isspace(static_cast<unsigned char>(*it))) continue;
    return *it == '?';
  }
  return false;
}

std::string leading_trigram(const std::vector<std::string>& tokens) {
  if (tokens.size() < 3) return "";
  return tokens[0] + " " + tokens[1] + " " + tokens[2];
}

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string opt_fmt(const std::optional<double>& v) {
  return v ? fmt(*v) : "-";
}

}  // namespace

std::map<std::string, std::size_t> leading_trigram_counts(
    const std::vector<std::string>& texts) {
  std::map<std::string, std::size_t> counts;
  for (const auto& t : texts) {
    std::string tri = leading_trigram(tokenize(t));
    if (!tri.empty()) counts[tri]++;
  }
  return counts;
}

StressFeatures stress_features(const std::string& utterance,
                               const std::string& intent_text,
                               const std::map<std::string, std::size_t>& trigram_counts,
                               const EmbeddingConfig& embedding,
                               std::size_t frequent_threshold) {
  if (utterance.empty() || intent_text.empty())
    throw Error("stress_features: empty input");
  std::vector<std::string> utt_tokens = tokenize(utterance);
  std::vector<std::string> intent_tokens = tokenize(intent_text);

  StressFeatures f;
  f.word_overlap = count_stem_overlap(intent_tokens, utt_tokens);
  f.length_tokens = utt_tokens.size();
  f.is_question = trailing_question_mark(utterance) ||
                  (!utt_tokens.empty() && interrogative_words().count(utt_tokens.front()));
  for (const auto& t : utt_tokens) {
    for (char c : t)
      if (std::isdigit(static_cast<unsigned char>(c))) {
        f.has_digit = true;
        break;
      }
    if (negation_words().count(t)) f.negation_count++;
  }
  // Contracted negations ("don't", "can't") survive only in the raw text.
  std::string lower = to_lower(utterance);
  for (std::size_t pos = lower.find("n't"); pos != std::string::npos;
       pos = lower.find("n't", pos + 3))
    f.negation_count++;

  std::string tri = leading_trigram(utt_tokens);
  if (!tri.empty()) {
    auto it = trigram_counts.find(tri);
    f.frequent_start = it != trigram_counts.end() && it->second > frequent_threshold;
  }
  f.label_cosine = cosine(embed(utterance, embedding), embed(intent_text, embedding));
  return f;
}

StressReport stress_report(const std::vector<PredictionRecord>& predictions,
                           const std::vector<StressFeatures>& features) {
  if (predictions.size() != features.size())
    throw Error("stress_report: features missing for some predictions");
  StressReport report;
  report.total = predictions.size();

  struct BoolAcc {
    std::size_t with = 0, with_correct = 0, without = 0, without_correct = 0;
  };
  std::map<std::string, BoolAcc> bools;
  struct NumAcc {
    double correct_sum = 0;
    std::size_t correct_n = 0;
    double incorrect_sum = 0;
    std::size_t incorrect_n = 0;
  };
  std::map<std::string, NumAcc> nums;

  for (std::size_t i = 0; i < predictions.size(); ++i) {
    bool correct = predictions[i].gold == predictions[i].pred;
    const StressFeatures& f = features[i];
    auto add_bool = [&](const std::string& name, bool value) {
      BoolAcc& a = bools[name];
      if (value) {
        a.with++;
        if (correct) a.with_correct++;
      } else {
        a.without++;
        if (correct) a.without_correct++;
      }
    };
    add_bool("word_overlap", f.word_overlap > 0);
    add_bool("question", f.is_question);
    add_bool("digits", f.has_digit);
    add_bool("negation", f.negation_count > 0);
    add_bool("frequent_start", f.frequent_start);

    auto add_num = [&](const std::string& name, double value) {
      NumAcc& a = nums[name];
      if (correct) {
        a.correct_sum += value;
        a.correct_n++;
      } else {
        a.incorrect_sum += value;
        a.incorrect_n++;
      }
    };
    add_num("word_overlap", static_cast<double>(f.word_overlap));
    add_num("length_tokens", static_cast<double>(f.length_tokens));
    add_num("negation_count", static_cast<double>(f.negation_count));
    add_num("label_cosine", f.label_cosine);
  }

  for (const auto& [name, a] : bools) {
    BoolFactorReport r;
    r.count_with = a.with;
    r.count_without = a.without;
    r.accuracy_with = ratio(a.with_correct, a.with);
    r.accuracy_without = ratio(a.without_correct, a.without);
    report.bool_factors[name] = r;
  }
  for (const auto& [name, a] : nums) {
    NumericFactorReport r;
    if (a.correct_n) r.mean_correct = a.correct_sum / static_cast<double>(a.correct_n);
    if (a.incorrect_n)
      r.mean_incorrect = a.incorrect_sum / static_cast<double>(a.incorrect_n);
    report.numeric_factors[name] = r;
  }
  return report;
}

Json stress_report_to_json(const StressReport& report) {
  Json bools = Json::object();
  for (const auto& [name, r] : report.bool_factors) {
    Json entry{{"count_with", r.count_with}, {"count_without", r.count_without}};
    entry["accuracy_with"] = r.accuracy_with ? Json(*r.accuracy_with) : Json();
    entry["accuracy_without"] = r.accuracy_without ? Json(*r.accuracy_without) : Json();
    bools[name] = std::move(entry);
  }
  Json nums = Json::object();
  for (const auto& [name, r] : report.numeric_factors) {
    Json entry = Json::object();
    entry["mean_correct"] = r.mean_correct ? Json(*r.mean_correct) : Json();
    entry["mean_incorrect"] = r.mean_incorrect ? Json(*r.mean_incorrect) : Json();
    nums[name] = std::move(entry);
  }
  return Json{{"total", report.total},
              {"bool_factors", bools},
              {"numeric_factors", nums}};
}

std::string stress_report_to_markdown(const StressReport& report) {
  std::string md;
  md += "| Factor | Acc (with) | n | Acc (without) | n |\n";
  md += "|---|---|---|---|---|\n";
  for (const auto& [name, r] : report.bool_factors) {
    md += "| " + name + " | " + opt_fmt(r.accuracy_with) + " | " +
          std::to_string(r.count_with) + " | " + opt_fmt(r.accuracy_without) +
          " | " + std::to_string(r.count_without) + " |\n";
  }
  md += "\n| Feature | Mean (correct) | Mean (incorrect) |\n";
  md += "|---|---|---|\n";
  for (const auto& [name, r] : report.numeric_factors) {
    md += "| " + name + " | " + opt_fmt(r.mean_correct) + " | " +
          opt_fmt(r.mean_incorrect) + " |\n";
  }
  return md;
}

std::vector<ConfusionPair> confusion_pairs(
    const std::vector<PredictionRecord>& predictions,
    const std::map<std::string, std::string>& intent_labels, std::size_t top_k) {
  std::map<std::pair<std::string, std::string>, std::size_t> counts;
  for (const auto& p : predictions) {
    if (p.gold != p.pred) counts[{p.gold, p.pred}]++;
  }
  std::vector<ConfusionPair> pairs;
  for (const auto& [key, count] : counts) {
    ConfusionPair cp;
    cp.gold = key.first;
    cp.pred = key.second;
    cp.count = count;
    auto g = intent_labels.find(cp.gold);
    auto q = intent_labels.find(cp.pred);
    if (g != intent_labels.end() && q != intent_labels.end()) {
      cp.shares_word = count_stem_overlap(tokenize_label(g->second),
                                          tokenize_label(q->second)) > 0;
    }
    pairs.push_back(std::move(cp));
  }
  std::sort(pairs.begin(), pairs.end(), [](const ConfusionPair& a, const ConfusionPair& b) {
    if (a.count != b.count) return a.count > b.count;
    if (a.gold != b.gold) return a.gold < b.gold;
    return a.pred < b.pred;
  });
  if (pairs.size() > top_k) pairs.resize(top_k);
  return pairs;
}

std::vector<AcceptabilityRow> acceptability_compare(
    const std::vector<std::string>& labels, const std::vector<Template>& templates,
    const NgramLm& lm, const LexicalizeOptions& options) {
  if (labels.empty()) throw Error("acceptability_compare: no labels");

  auto averaged = [&](const std::string& variant,
                      const std::vector<std::string>& sentences) {
    AcceptabilityRow row;
    row.variant = variant;
    for (const auto& s : sentences) {
      Acceptability a = score_sentence(lm, s);
      row.mean.lp += a.lp;
      row.mean.lp_mean += a.lp_mean;
      row.mean.lp_pen += a.lp_pen;
      row.mean.lp_norm += a.lp_norm;
      row.mean.slor += a.slor;
    }
    double n = static_cast<double>(sentences.size());
    row.mean.lp /= n;
    row.mean.lp_mean /= n;
    row.mean.lp_pen /= n;
    row.mean.lp_norm /= n;
    row.mean.slor /= n;
    return row;
  };

  std::vector<AcceptabilityRow> rows;
  std::vector<std::string> raw;
  raw.reserve(labels.size());
  for (const auto& label : labels) raw.push_back(join(tokenize_label(label)));
  rows.push_back(averaged("labels", raw));

  for (const auto& tmpl : templates) {
    std::vector<std::string> sentences;
    sentences.reserve(labels.size());
    for (const auto& label : labels)
      sentences.push_back(lexicalize_label(label, tmpl, options));
    rows.push_back(averaged(tmpl.id, sentences));
  }
  return rows;
}

Json acceptability_table_to_json(const std::vector<AcceptabilityRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back(Json{{"variant", r.variant},
                       {"lp", r.mean.lp},
                       {"lp_mean", r.mean.lp_mean},
                       {"lp_pen", r.mean.lp_pen},
                       {"lp_norm", r.mean.lp_norm},
                       {"slor", r.mean.slor}});
  }
  return out;
}

std::string acceptability_table_to_markdown(const std::vector<AcceptabilityRow>& rows) {
  std::string md;
  md += "| ID | LP | LP_mean | LP_pen | LP_norm | SLOR |\n";
  md += "|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    md += "| " + r.variant + " | " + fmt(r.mean.lp) + " | " + fmt(r.mean.lp_mean) +
          " | " + fmt(r.mean.lp_pen) + " | " + fmt(r.mean.lp_norm) + " | " +
          fmt(r.mean.slor) + " |\n";
  }
  return md;
}

}  // namespace gzsl
