#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "gzsl/corpus.hpp"
#include "gzsl/demo.hpp"
#include "gzsl/error.hpp"
#include "gzsl/sampling.hpp"

using namespace gzsl;

namespace {

struct Fixture {
  Dataset dataset;
  GzslSplit split;
  std::map<std::string, std::string> texts;  // raw labels
  EmbeddingConfig embedding;

  explicit Fixture(std::size_t n_intents = 8, std::size_t per_intent = 10,
                   std::size_t n_unseen = 2) {
    dataset = make_demo_corpus({n_intents, per_intent, 5});
    split = make_gzsl_split(dataset, n_unseen, 0.7, 11);
    for (const auto& intent : dataset.intents) texts[intent.id] = intent.label;
    embedding.dimension = 256;
  }

  std::vector<const Utterance*> train_ptrs() const {
    std::set<std::string> train_ids(split.train.begin(), split.train.end());
    std::vector<const Utterance*> out;
    for (const auto& u : dataset.utterances)
      if (train_ids.count(u.id)) out.push_back(&u);
    return out;
  }

  const Utterance& utt(const std::string& id) const {
    const Utterance* u = dataset.find_utterance(id);
    REQUIRE(u != nullptr);
    return *u;
  }
};

}  // namespace

TEST_CASE("positive pairs are a bijection with train utterances") {
  Fixture fx;
  auto pairs = positive_pairs(fx.dataset, fx.split, fx.texts);
  CHECK(pairs.size() == fx.split.train.size());
  for (const auto& p : pairs) {
    CHECK(p.label == 1);
    CHECK(p.origin == PairOrigin::kPositive);
  }

  GzslSplit empty_train = fx.split;
  empty_train.train.clear();
  CHECK(positive_pairs(fx.dataset, empty_train, fx.texts).empty());

  std::map<std::string, std::string> missing;  // no texts at all
  CHECK_THROWS_AS(positive_pairs(fx.dataset, fx.split, missing), Error);
}

TEST_CASE("positive pairs use the mapped intent text") {
  Fixture fx;
  std::map<std::string, std::string> lexical;
  for (const auto& [id, label] : fx.texts) lexical[id] = "the user wants to " + label;
  auto pairs = positive_pairs(fx.dataset, fx.split, lexical);
  for (const auto& p : pairs)
    CHECK(p.intent_text.rfind("the user wants to ", 0) == 0);
}

TEST_CASE("random negative utterances never come from the own class") {
  Fixture fx;
  auto train = fx.train_ptrs();
  const std::string intent = train.front()->intent_id;
  Rng rng(3);
  SamplingStats stats;
  for (int i = 0; i < 20; ++i) {
    auto negs = random_negative_utterances(intent, train, 5, rng, &stats);
    CHECK(negs.size() == 5);
    for (const auto* n : negs) CHECK(n->intent_id != intent);
  }
  CHECK(stats.shortage_events == 0);
}

TEST_CASE("random negative utterances boundary cases") {
  Fixture fx(3, 3, 1);
  auto train = fx.train_ptrs();
  const std::string intent = train.front()->intent_id;
  std::size_t out_of_class = 0;
  for (const auto* u : train)
    if (u->intent_id != intent) ++out_of_class;

  Rng rng(3);
  SamplingStats stats;
  auto all = random_negative_utterances(intent, train, out_of_class, rng, &stats);
  CHECK(all.size() == out_of_class);
  CHECK(stats.shortage_events == 0);

  auto flagged = random_negative_utterances(intent, train, out_of_class + 5, rng, &stats);
  CHECK(flagged.size() == out_of_class);
  CHECK(stats.shortage_events == 1);

  Rng r1(9), r2(9);
  auto a = random_negative_utterances(intent, train, 3, r1, nullptr);
  auto b = random_negative_utterances(intent, train, 3, r2, nullptr);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i]->id == b[i]->id);
}

TEST_CASE("random negative intents exclude the gold intent") {
  std::vector<std::string> seen = {"a", "b", "c", "d"};
  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    auto negs = random_negative_intents("b", seen, 2, rng, nullptr);
    CHECK(negs.size() == 2);
    for (const auto& id : negs) CHECK(id != "b");
  }

  auto only = random_negative_intents("a", {"a", "b"}, 1, rng, nullptr);
  REQUIRE(only.size() == 1);
  CHECK(only[0] == "b");

  SamplingStats stats;
  auto with_repl = random_negative_intents("a", {"a", "b"}, 3, rng, &stats);
  CHECK(with_repl.size() == 3);
  CHECK(stats.with_replacement_events == 1);

  CHECK_THROWS_AS(random_negative_intents("a", {"a"}, 1, rng, nullptr), Error);
}

TEST_CASE("hard utterance pools exclude the own class and cap at the pool size") {
  Fixture fx(5, 10, 1);
  auto pools = mine_hard_negative_utterances(fx.dataset, fx.split, fx.embedding, 100);
  CHECK(pools.size() == fx.split.train.size());
  std::size_t train_n = fx.split.train.size();
  for (const auto& [utt_id, pool] : pools) {
    const std::string& own = fx.utt(utt_id).intent_id;
    std::size_t out_of_class = 0;
    for (const auto& id : fx.split.train)
      if (fx.utt(id).intent_id != own) ++out_of_class;
    CHECK(pool.size() == std::min<std::size_t>(100, out_of_class));
    CHECK(pool.size() < train_n);
    for (const auto& id : pool) CHECK(fx.utt(id).intent_id != own);
  }
}

TEST_CASE("hard pools are more similar than random samples (brute-force oracle)") {
  Fixture fx(8, 12, 2);
  std::size_t top_n = 10;
  auto pools = mine_hard_negative_utterances(fx.dataset, fx.split, fx.embedding, top_n);

  // Oracle: all-pairs cosine over train utterances.
  std::map<std::string, std::vector<double>> vecs;
  for (const auto& id : fx.split.train)
    vecs[id] = embed(fx.utt(id).text, fx.embedding);

  double pool_sum = 0.0;
  std::size_t pool_n = 0;
  double all_sum = 0.0;
  std::size_t all_n = 0;
  for (const auto& [utt_id, pool] : pools) {
    const std::string& own = fx.utt(utt_id).intent_id;
    for (const auto& other : fx.split.train) {
      if (fx.utt(other).intent_id == own) continue;
      double c = cosine(vecs.at(utt_id), vecs.at(other));
      all_sum += c;  // uniform out-of-class baseline
      ++all_n;
    }
    for (const auto& neg : pool) {
      pool_sum += cosine(vecs.at(utt_id), vecs.at(neg));
      ++pool_n;
    }
    // pool must hold exactly the top-N out-of-class by cosine
    std::vector<std::pair<double, std::string>> ranked;
    for (const auto& other : fx.split.train) {
      if (fx.utt(other).intent_id == own) continue;
      ranked.emplace_back(cosine(vecs.at(utt_id), vecs.at(other)), other);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    REQUIRE(pool.size() == std::min(top_n, ranked.size()));
    for (std::size_t i = 0; i < pool.size(); ++i) CHECK(pool[i] == ranked[i].second);
  }
  CHECK(pool_sum / static_cast<double>(pool_n) >
        all_sum / static_cast<double>(all_n));
}

TEST_CASE("hard intent sampling follows the similarity proportions") {
  std::map<std::string, double> sims = {{"hot", 0.9}, {"cold", 0.1}};
  std::size_t hot = 0;
  const int draws = 10000;
  Rng rng(11);
  for (int i = 0; i < draws; ++i) {
    auto pick = hard_negative_intents("gold", sims, 1, rng);
    REQUIRE(pick.size() == 1);
    if (pick[0] == "hot") ++hot;
  }
  double freq = static_cast<double>(hot) / draws;
  CHECK(std::fabs(freq - 0.9) <= 0.02);  // exact-proportional oracle: 0.9/(0.9+0.1)
}

TEST_CASE("hard intent sampling is uniform for equidistant candidates") {
  std::map<std::string, double> sims = {{"a", 0.4}, {"b", 0.4}, {"c", 0.4}};
  std::map<std::string, int> counts;
  Rng rng(7);
  const int draws = 9000;
  for (int i = 0; i < draws; ++i) counts[hard_negative_intents("gold", sims, 1, rng)[0]]++;
  for (const auto& [id, n] : counts)
    CHECK(std::fabs(n / static_cast<double>(draws) - 1.0 / 3.0) < 0.02);
}

TEST_CASE("hard intent sampling never returns gold and clamps tiny weights") {
  std::map<std::string, double> sims = {{"gold", 1.0}, {"a", -0.2}, {"b", 0.5}};
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    auto picks = hard_negative_intents("gold", sims, 2, rng);
    CHECK(picks.size() == 2);
    for (const auto& p : picks) CHECK(p != "gold");
  }
  CHECK_THROWS_AS(hard_negative_intents("gold", {{"gold", 1.0}}, 1, rng), Error);
}

TEST_CASE("build_training_set produces (1+k) pairs per positive") {
  Fixture fx;
  SamplingConfig cfg;
  cfg.k = 5;
  cfg.seed = 11;
  for (SamplingStrategy strategy :
       {SamplingStrategy::kRandomIS, SamplingStrategy::kRandomUS,
        SamplingStrategy::kHardIS, SamplingStrategy::kHardUS}) {
    cfg.strategy = strategy;
    auto pairs = build_training_set(fx.dataset, fx.split, fx.texts, cfg, fx.embedding);
    CHECK(pairs.size() == 6 * fx.split.train.size());
    std::size_t positives = 0;
    for (const auto& p : pairs) positives += p.label;
    CHECK(positives == fx.split.train.size());
  }
}

TEST_CASE("negative pairs always violate the gold assignment") {
  Fixture fx;
  std::map<std::string, std::string> gold_of_text;  // utterance text -> gold intent text
  for (const auto& u : fx.dataset.utterances) gold_of_text[u.text] = fx.texts[u.intent_id];

  SamplingConfig cfg;
  cfg.k = 3;
  for (SamplingStrategy strategy :
       {SamplingStrategy::kRandomIS, SamplingStrategy::kRandomUS,
        SamplingStrategy::kHardIS, SamplingStrategy::kHardUS}) {
    cfg.strategy = strategy;
    auto pairs = build_training_set(fx.dataset, fx.split, fx.texts, cfg, fx.embedding);
    for (const auto& p : pairs) {
      if (p.label == 0) CHECK(gold_of_text.at(p.utterance_text) != p.intent_text);
      else CHECK(gold_of_text.at(p.utterance_text) == p.intent_text);
    }
  }
}

TEST_CASE("strategies share positives and differ in negatives") {
  Fixture fx;
  SamplingConfig cfg;
  cfg.seed = 11;
  cfg.strategy = SamplingStrategy::kRandomIS;
  auto is_pairs = build_training_set(fx.dataset, fx.split, fx.texts, cfg, fx.embedding);
  cfg.strategy = SamplingStrategy::kRandomUS;
  auto us_pairs = build_training_set(fx.dataset, fx.split, fx.texts, cfg, fx.embedding);

  auto positives = [](const std::vector<TrainingPair>& pairs) {
    std::multiset<std::pair<std::string, std::string>> out;
    for (const auto& p : pairs)
      if (p.label == 1) out.insert({p.intent_text, p.utterance_text});
    return out;
  };
  auto negatives = [](const std::vector<TrainingPair>& pairs) {
    std::multiset<std::pair<std::string, std::string>> out;
    for (const auto& p : pairs)
      if (p.label == 0) out.insert({p.intent_text, p.utterance_text});
    return out;
  };
  CHECK(positives(is_pairs) == positives(us_pairs));
  CHECK(negatives(is_pairs) != negatives(us_pairs));
}

TEST_CASE("hard US negatives are closer than random US negatives (oracle)") {
  Fixture fx(8, 12, 2);
  std::map<std::string, std::vector<double>> vec_of_text;
  for (const auto& u : fx.dataset.utterances)
    vec_of_text[u.text] = embed(u.text, fx.embedding);
  std::map<std::string, std::string> text_of_intent_text;  // intent text -> a positive text
  std::map<std::string, std::vector<std::string>> positives_of_intent;
  std::set<std::string> train_ids(fx.split.train.begin(), fx.split.train.end());
  for (const auto& u : fx.dataset.utterances)
    if (train_ids.count(u.id)) positives_of_intent[fx.texts[u.intent_id]].push_back(u.text);

  auto mean_neg_cosine = [&](SamplingStrategy strategy) {
    SamplingConfig cfg;
    cfg.strategy = strategy;
    cfg.k = 5;
    cfg.top_n = 10;
    cfg.seed = 11;
    auto pairs = build_training_set(fx.dataset, fx.split, fx.texts, cfg, fx.embedding);
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& p : pairs) {
      if (p.label != 0) continue;
      // mean over the intent's own positives vs this negative utterance
      for (const auto& pos_text : positives_of_intent.at(p.intent_text)) {
        sum += cosine(vec_of_text.at(pos_text), vec_of_text.at(p.utterance_text));
        ++n;
      }
    }
    return sum / static_cast<double>(n);
  };
  CHECK(mean_neg_cosine(SamplingStrategy::kHardUS) >
        mean_neg_cosine(SamplingStrategy::kRandomUS));
}

TEST_CASE("sampling is reproducible and sensitive to the seed") {
  Fixture fx;
  SamplingConfig cfg;
  cfg.strategy = SamplingStrategy::kHardUS;
  cfg.seed = 11;
  auto a = build_training_set(fx.dataset, fx.split, fx.texts, cfg, fx.embedding);
  auto b = build_training_set(fx.dataset, fx.split, fx.texts, cfg, fx.embedding);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].intent_text == b[i].intent_text);
    CHECK(a[i].utterance_text == b[i].utterance_text);
    CHECK(a[i].label == b[i].label);
  }
  auto flat = [](const std::vector<TrainingPair>& pairs) {
    std::string s;
    for (const auto& p : pairs)
      s += p.intent_text + "\x1f" + p.utterance_text + "\x1f" +
           std::to_string(p.label) + "\n";
    return s;
  };
  cfg.seed = 12;
  auto c = build_training_set(fx.dataset, fx.split, fx.texts, cfg, fx.embedding);
  CHECK(flat(a) != flat(c));
}

TEST_CASE("sampling config is validated") {
  SamplingConfig bad;
  bad.k = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = SamplingConfig{};
  bad.top_n = 2;
  bad.k = 5;
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK_THROWS_AS(parse_strategy("bogus"), Error);
  CHECK(parse_strategy("hard_us") == SamplingStrategy::kHardUS);
  CHECK(strategy_name(SamplingStrategy::kRandomIS) == "random_is");
}
