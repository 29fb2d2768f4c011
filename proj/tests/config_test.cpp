#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "gzsl/config.hpp"
#include "gzsl/demo.hpp"
#include "gzsl/error.hpp"

using namespace gzsl;

TEST_CASE("the default sweep grid expands to 48 configurations") {
  SweepGrid grid;
  auto points = expand_grid(grid);
  CHECK(points.size() == 48);  // 2*2*2*3*2
  // spot-check the corners of the declaration-order product
  CHECK(points.front().learning_rate == doctest::Approx(2e-5));
  CHECK(points.front().batch_size == 8);
  CHECK(points.front().k == 5);
  CHECK(points.back().learning_rate == doctest::Approx(5e-5));
  CHECK(points.back().batch_size == 16);
  CHECK(points.back().max_len_tokens == 40);
  CHECK(points.back().k == 7);

  // all points distinct
  std::set<std::string> keys;
  for (const auto& p : points) {
    keys.insert(std::to_string(p.learning_rate) + ":" + std::to_string(p.batch_size) +
                ":" + std::to_string(p.warmup_ratio) + ":" +
                std::to_string(p.max_len_tokens) + ":" + std::to_string(p.k));
  }
  CHECK(keys.size() == 48);
}

TEST_CASE("grid axes must be non-empty") {
  SweepGrid grid;
  grid.ks.clear();
  CHECK_THROWS_AS(expand_grid(grid), Error);
}

TEST_CASE("config round-trips through json") {
  ExperimentConfig c;
  c.utterances_path = "data/utts.jsonl";
  c.intents_path = "data/intents.jsonl";
  c.intent_text_source = "template";
  c.template_id = "q1";
  c.strategy = "hard_us";
  c.n_unseen = 5;
  c.seeds = {11, 12, 13};
  Json j = config_to_json(c);
  ExperimentConfig back = config_from_json(j);
  CHECK(config_to_json(back).dump() == j.dump());
  CHECK(back.template_id == "q1");
  CHECK(back.seeds == std::vector<std::int64_t>{11, 12, 13});
}

TEST_CASE("fingerprints are stable and sensitive") {
  ExperimentConfig c;
  c.n_unseen = 5;
  std::string fp = config_fingerprint(c);
  CHECK(fp.size() == 16);
  CHECK(config_fingerprint(c) == fp);
  ExperimentConfig other = c;
  other.k = c.k + 1;
  CHECK(config_fingerprint(other) != fp);
}

TEST_CASE("unknown fields are reported by name") {
  Json j{{"utterances", "x"}, {"intents", "y"}, {"learning_rate", 0.1}};
  try {
    config_from_json(j);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("learning_rate") != std::string::npos);
  }
}

TEST_CASE("field-level validation messages") {
  Json base{{"utterances", "x"}, {"intents", "y"}};

  Json bad = base;
  bad["strategy"] = "sideways";
  CHECK_THROWS_AS(config_from_json(bad), Error);

  bad = base;
  bad["scorer"] = Json{{"learning_rate", -1.0}};
  try {
    config_from_json(bad);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("learning_rate") != std::string::npos);
  }

  bad = base;
  bad["seeds"] = Json::array();
  CHECK_THROWS_AS(config_from_json(bad), Error);

  bad = base;
  bad["train_fraction"] = 1.5;
  CHECK_THROWS_AS(config_from_json(bad), Error);

  bad = base;
  bad["k"] = "five";
  try {
    config_from_json(bad);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("k") != std::string::npos);
  }
}

TEST_CASE("config maps onto experiment options") {
  ExperimentConfig c;
  c.intent_text_source = "template";
  c.template_id = "q1";
  c.strategy = "hard_is";
  c.k = 7;
  c.n_unseen = 4;
  c.seeds = {11, 12};
  c.dataless = true;
  ExperimentOptions opts = to_experiment_options(c);
  CHECK(opts.model.text_source.kind == IntentTextKind::kTemplate);
  CHECK(opts.model.text_source.template_id == "q1");
  CHECK(opts.model.sampling.strategy == SamplingStrategy::kHardIS);
  CHECK(opts.model.sampling.k == 7);
  CHECK(opts.n_unseen == 4);
  CHECK(opts.seeds == std::vector<std::int64_t>{11, 12});
  CHECK(opts.dataless);
  CHECK(opts.config_fingerprint == config_fingerprint(c));
}

TEST_CASE("load_config reads files and validates") {
  auto dir = std::filesystem::temp_directory_path() / "gzsl_config_test";
  std::filesystem::create_directories(dir);
  ExperimentConfig c;
  c.utterances_path = "u.jsonl";
  c.intents_path = "i.jsonl";
  write_json_file(dir / "config.json", config_to_json(c));
  ExperimentConfig loaded = load_config(dir / "config.json");
  CHECK(loaded.utterances_path == "u.jsonl");
  CHECK_THROWS_AS(load_config(dir / "missing.json"), Error);
}

TEST_CASE("sweep runs every grid point and ranks by overall F1") {
  Dataset dataset = make_demo_corpus({6, 8, 5});
  ExperimentConfig c;
  c.n_unseen = 2;
  c.strategy = "random_us";
  c.k = 2;
  c.scorer.epochs = 4;
  c.embedding.dimension = 128;
  c.seeds = {11, 12, 13};
  c.sweep_runs_per_point = 2;  // only the first two seeds run per point
  c.sweep.learning_rates = {0.05, 0.1};
  c.sweep.batch_sizes = {16};
  c.sweep.warmup_ratios = {0.1};
  c.sweep.max_lens = {30};
  c.sweep.ks = {2};

  auto rows = run_sweep(dataset, c);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].report.runs.at("overall").size() == 2);
  double f0 = rows[0].report.partitions.at("overall").at("weighted_f1").mean;
  double f1 = rows[1].report.partitions.at("overall").at("weighted_f1").mean;
  CHECK(f0 >= f1);  // ranked

  Json j = sweep_to_json(rows, "fp");
  CHECK(j["results"].size() == 2);
  std::string md = sweep_to_markdown(rows);
  CHECK(md.find("| 1 |") != std::string::npos);
}
