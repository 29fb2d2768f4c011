#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gzsl/analysis.hpp"
#include "gzsl/demo.hpp"
#include "gzsl/error.hpp"
#include "gzsl/text.hpp"

using namespace gzsl;

namespace {

EmbeddingConfig small_embedding() {
  EmbeddingConfig cfg;
  cfg.dimension = 256;
  return cfg;
}

}  // namespace

TEST_CASE("stress features on the worked examples") {
  std::map<std::string, std::size_t> trigrams;

  StressFeatures f = stress_features("I want to book a hotel", "book hotel",
                                     trigrams, small_embedding());
  CHECK(f.word_overlap == 2);  // book, hotel
  CHECK(f.length_tokens == 6);
  CHECK(!f.is_question);
  CHECK(!f.has_digit);
  CHECK(f.negation_count == 0);

  StressFeatures q = stress_features("Is there a train at 5?", "find trains",
                                     trigrams, small_embedding());
  CHECK(q.is_question);
  CHECK(q.has_digit);
  CHECK(q.word_overlap == 1);  // train/trains share a stem

  StressFeatures n = stress_features("I don't want that, no", "cancel subscription",
                                     trigrams, small_embedding());
  CHECK(n.negation_count == 2);  // n't + no

  StressFeatures lead = stress_features("what is the weather", "get weather",
                                        trigrams, small_embedding());
  CHECK(lead.is_question);  // leading interrogative, no question mark

  CHECK_THROWS_AS(stress_features("", "x", trigrams, small_embedding()), Error);
}

TEST_CASE("frequent-start detection uses the corpus trigram counts") {
  std::vector<std::string> texts;
  for (int i = 0; i < 40; ++i) texts.push_back("i want to do thing " + std::to_string(i));
  texts.push_back("please find a hotel");
  auto counts = leading_trigram_counts(texts);
  CHECK(counts.at("i want to") == 40);

  StressFeatures f =
      stress_features("i want to fly home", "book flight", counts, small_embedding());
  CHECK(f.frequent_start);
  StressFeatures g =
      stress_features("please find a hotel", "find hotel", counts, small_embedding());
  CHECK(!g.frequent_start);  // occurs once, below the threshold
  StressFeatures h =
      stress_features("hi", "greet", counts, small_embedding());
  CHECK(!h.frequent_start);  // shorter than a trigram
}

TEST_CASE("label cosine rises with shared words") {
  std::map<std::string, std::size_t> trigrams;
  StressFeatures close = stress_features("i want to book a hotel", "book hotel",
                                         trigrams, small_embedding());
  StressFeatures far = stress_features("play loud jazz", "book hotel",
                                       trigrams, small_embedding());
  CHECK(close.label_cosine > far.label_cosine);
}

namespace {

PredictionRecord rec(const std::string& gold, const std::string& pred) {
  return {"u" + gold + pred, gold, pred, {}};
}

StressFeatures qf(bool question) {
  StressFeatures f;
  f.is_question = question;
  f.length_tokens = 3;
  return f;
}

}  // namespace

TEST_CASE("stress report buckets partition the test set") {
  std::vector<PredictionRecord> preds = {rec("A", "A"), rec("A", "B"), rec("B", "B"),
                                         rec("B", "A")};
  std::vector<StressFeatures> feats = {qf(true), qf(true), qf(false), qf(false)};
  StressReport report = stress_report(preds, feats);
  const BoolFactorReport& q = report.bool_factors.at("question");
  CHECK(q.count_with + q.count_without == 4);
  CHECK(*q.accuracy_with == doctest::Approx(0.5));  // 2 questions, 1 correct
  CHECK(*q.accuracy_without == doctest::Approx(0.5));
  CHECK(report.total == 4);

  const NumericFactorReport& len = report.numeric_factors.at("length_tokens");
  CHECK(*len.mean_correct == doctest::Approx(3.0));
  CHECK(*len.mean_incorrect == doctest::Approx(3.0));
}

TEST_CASE("all-correct predictions give accuracy one in every bucket") {
  std::vector<PredictionRecord> preds = {rec("A", "A"), rec("B", "B")};
  std::vector<StressFeatures> feats = {qf(true), qf(false)};
  StressReport report = stress_report(preds, feats);
  for (const auto& [name, r] : report.bool_factors) {
    if (r.accuracy_with) CHECK(*r.accuracy_with == 1.0);
    if (r.accuracy_without) CHECK(*r.accuracy_without == 1.0);
  }
  // empty buckets stay absent
  const BoolFactorReport& digits = report.bool_factors.at("digits");
  CHECK(!digits.accuracy_with);
  CHECK(digits.count_with == 0);
}

TEST_CASE("stress report rejects mismatched inputs") {
  CHECK_THROWS_AS(stress_report({rec("A", "A")}, {}), Error);
}

TEST_CASE("confusion pairs count misclassifications and flag shared words") {
  std::map<std::string, std::string> labels = {
      {"get_train_tickets", "get_train_tickets"},
      {"find_trains", "find_trains"},
      {"play_media", "play_media"},
      {"play_song", "play_song"},
      {"get_weather", "get_weather"}};
  std::vector<PredictionRecord> preds = {
      rec("get_train_tickets", "find_trains"), rec("get_train_tickets", "find_trains"),
      rec("play_media", "play_song"), rec("get_weather", "get_weather"),
      rec("play_media", "get_weather")};

  auto pairs = confusion_pairs(preds, labels, 10);
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0].gold == "get_train_tickets");
  CHECK(pairs[0].pred == "find_trains");
  CHECK(pairs[0].count == 2);
  CHECK(pairs[0].shares_word);  // "train" after plural stripping

  std::size_t total = 0;
  for (const auto& p : pairs) total += p.count;
  CHECK(total == 4);  // sums to the misclassification count

  auto media_song = std::find_if(pairs.begin(), pairs.end(), [](const ConfusionPair& p) {
    return p.gold == "play_media" && p.pred == "play_song";
  });
  REQUIRE(media_song != pairs.end());
  CHECK(media_song->shares_word);  // "play"

  CHECK(confusion_pairs({rec("A", "A")}, {}, 5).empty());
  CHECK(confusion_pairs(preds, labels, 1).size() == 1);
}

TEST_CASE("one-sentence LM matches the hand-evaluated smoothing formula") {
  LmConfig cfg;
  cfg.order = 2;
  cfg.add_k = 0.1;
  cfg.interpolation = {0.3, 0.7};
  NgramLm lm = NgramLm::train({"a b"}, cfg);

  // vocab {a, b, <unk>, </s>}: V = 4
  CHECK(lm.vocabulary_size() == 4);
  // P(a|<s>) = 0.3*(1.1/3.4) + 0.7*(1.1/1.4); P(</s>|a) = 0.3*(1.1/3.4) + 0.7*(0.1/1.4)
  double p_a_bos = 0.3 * (1.1 / 3.4) + 0.7 * (1.1 / 1.4);
  double p_end_a = 0.3 * (1.1 / 3.4) + 0.7 * (0.1 / 1.4);
  double expected = std::log(p_a_bos) + std::log(p_end_a);
  CHECK(lm.sentence_logprob("a") == doctest::Approx(expected).epsilon(1e-12));

  // unigram: P1(a) = 1.1/3.4
  CHECK(lm.unigram_logprob("a") == doctest::Approx(std::log(1.1 / 3.4)).epsilon(1e-12));
}

TEST_CASE("conditionals normalize and unseen words keep mass") {
  NgramLm lm = NgramLm::train(
      {"book a hotel", "book a flight", "find a hotel near me", "play some music"});
  std::vector<std::string> vocab = lm.vocabulary();

  const std::vector<std::vector<std::string>> contexts = {
      {}, {"book"}, {"book", "a"}, {"a"}, {"zzz"}, {"hotel", "zzz"}};
  for (const auto& ctx : contexts) {
    double total = 0.0;
    for (const auto& w : vocab) total += lm.conditional(w, ctx);
    CHECK(std::fabs(total - 1.0) < 1e-9);
  }

  CHECK(lm.conditional("zebra", {"book"}) > 0.0);  // collapses onto <unk>
  double uni_total = 0.0;
  for (const auto& w : vocab) uni_total += std::exp(lm.unigram_logprob(w));
  CHECK(std::fabs(uni_total - 1.0) < 1e-9);
}

TEST_CASE("sentence log probabilities are negative and stateless") {
  NgramLm lm = NgramLm::train({"book a hotel", "find a flight"});
  double lp1 = lm.sentence_logprob("book a hotel");
  double lp2 = lm.sentence_logprob("completely unrelated words");
  CHECK(lp1 < 0.0);
  CHECK(lp2 < 0.0);
  CHECK(lp1 > lp2);
  // scoring order does not matter
  CHECK(lm.sentence_logprob("book a hotel") == lp1);
  CHECK_THROWS_AS(NgramLm::train({}), Error);
  CHECK_THROWS_AS(lm.sentence_logprob("..."), Error);
}

TEST_CASE("acceptability formulas on given numbers") {
  Acceptability a = acceptability(-10.0, -20.0, 5);
  CHECK(a.lp == -10.0);
  CHECK(a.lp_mean == doctest::Approx(-2.0));
  CHECK(a.lp_pen == doctest::Approx(-10.0 / std::pow(10.0 / 6.0, 0.8)).epsilon(1e-12));
  CHECK(a.lp_norm == doctest::Approx(-0.5));
  CHECK(a.slor == doctest::Approx(2.0));

  Acceptability single = acceptability(-3.0, -4.0, 1);
  CHECK(single.lp_mean == doctest::Approx(-3.0));  // |s|=1: lp_mean = lp
  CHECK(single.lp_pen == doctest::Approx(-3.0));   // (5+1)/6 = 1

  Acceptability equal = acceptability(-7.0, -7.0, 3);
  CHECK(equal.slor == 0.0);

  CHECK_THROWS_AS(acceptability(-1.0, -2.0, 0), Error);
  CHECK_THROWS_AS(acceptability(-1.0, 0.0, 2), Error);
}

TEST_CASE("slor ignores length when per-token probabilities are constant") {
  LmConfig cfg;
  cfg.order = 1;
  cfg.interpolation = {1.0};
  NgramLm lm = NgramLm::train({"a a a a"}, cfg);
  double s1 = score_sentence(lm, "a").slor;
  double s3 = score_sentence(lm, "a a a").slor;
  double s5 = score_sentence(lm, "a a a a a").slor;
  CHECK(s1 == doctest::Approx(s3).epsilon(1e-12));
  CHECK(s3 == doctest::Approx(s5).epsilon(1e-12));
  CHECK(std::fabs(s1) < 1e-12);  // unigram model scores itself
}

TEST_CASE("lexicalized labels are more acceptable than raw labels") {
  Dataset corpus = make_demo_corpus({20, 40, 7});
  std::vector<std::string> sentences;
  for (const auto& u : corpus.utterances) sentences.push_back(u.text);
  NgramLm lm = NgramLm::train(sentences);

  std::vector<std::string> labels;
  for (const auto& intent : corpus.intents) labels.push_back(intent.label);

  auto rows = acceptability_compare(labels, builtin_templates(), lm);
  REQUIRE(rows.size() == 1 + builtin_templates().size());
  CHECK(rows[0].variant == "labels");
  const AcceptabilityRow* d1 = nullptr;
  for (const auto& r : rows)
    if (r.variant == "d1") d1 = &r;
  REQUIRE(d1 != nullptr);
  CHECK(d1->mean.slor > rows[0].mean.slor);
}

TEST_CASE("averaging a single intent equals its individual scores") {
  NgramLm lm = NgramLm::train({"the user wants to book a hotel", "book a hotel now"});
  auto rows = acceptability_compare({"book_hotel"}, {find_template("d1")}, lm);
  REQUIRE(rows.size() == 2);
  Acceptability direct = score_sentence(lm, "the user wants to book a hotel");
  CHECK(rows[1].mean.lp == doctest::Approx(direct.lp));
  CHECK(rows[1].mean.slor == doctest::Approx(direct.slor));

  Acceptability raw = score_sentence(lm, "book hotel");
  CHECK(rows[0].mean.lp == doctest::Approx(raw.lp));
}

TEST_CASE("tables serialize to json and markdown") {
  NgramLm lm = NgramLm::train({"book a hotel"});
  auto rows = acceptability_compare({"book_hotel"}, builtin_templates(), lm);
  Json j = acceptability_table_to_json(rows);
  CHECK(j.is_array());
  CHECK(j.size() == rows.size());
  std::string md = acceptability_table_to_markdown(rows);
  CHECK(md.find("| labels |") != std::string::npos);
  CHECK(md.find("SLOR") != std::string::npos);

  std::vector<PredictionRecord> preds = {rec("A", "A")};
  std::vector<StressFeatures> feats = {qf(false)};
  Json sj = stress_report_to_json(stress_report(preds, feats));
  CHECK(sj["total"] == 1);
  std::string smd = stress_report_to_markdown(stress_report(preds, feats));
  CHECK(smd.find("question") != std::string::npos);
}
