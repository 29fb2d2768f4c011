#include "gzsl/config.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "gzsl/error.hpp"
#include "gzsl/rng.hpp"

namespace gzsl {

void SweepGrid::validate() const {
  if (learning_rates.empty() || batch_sizes.empty() || warmup_ratios.empty() ||
      max_lens.empty() || ks.empty())
    throw Error("config: sweep grid axes must be non-empty");
}

std::vector<SweepPoint> expand_grid(const SweepGrid& grid) {
  grid.validate();
  std::vector<SweepPoint> points;
  points.reserve(grid.learning_rates.size() * grid.batch_sizes.size() *
                 grid.warmup_ratios.size() * grid.max_lens.size() * grid.ks.size());
  for (double lr : grid.learning_rates)
    for (std::size_t batch : grid.batch_sizes)
      for (double warmup : grid.warmup_ratios)
        for (std::size_t max_len : grid.max_lens)
          for (std::size_t k : grid.ks)
            points.push_back({lr, batch, warmup, max_len, k});
  return points;
}

namespace {

void require_known_keys(const Json& j, const std::set<std::string>& known,
                        const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key))
      throw Error("config: unknown field " + where + key);
  }
}

template <typename T>
T field(const Json& j, const std::string& key, T fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  try {
    return j[key].get<T>();
  } catch (const Json::exception&) {
    throw Error("config: field " + key + " has the wrong type");
  }
}

}  // namespace

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw Error("config: top level must be an object");
  require_known_keys(
      j,
      {"utterances", "intents", "split", "templates", "intent_text_source",
       "template_id", "capitalize_first", "question_mark", "strategy", "k",
       "top_n", "scorer", "embedding", "n_unseen", "train_fraction", "seeds",
       "dataless", "dataless_n_per_intent", "sweep", "sweep_runs_per_point",
       "output_dir"},
      "");

  ExperimentConfig c;
  c.utterances_path = field<std::string>(j, "utterances", "");
  c.intents_path = field<std::string>(j, "intents", "");
  if (j.contains("split") && !j["split"].is_null())
    c.split_path = j["split"].get<std::string>();
  if (j.contains("templates") && !j["templates"].is_null())
    c.templates_path = j["templates"].get<std::string>();

  c.intent_text_source = field<std::string>(j, "intent_text_source", c.intent_text_source);
  parse_intent_text_kind(c.intent_text_source);  // validates
  c.template_id = field<std::string>(j, "template_id", c.template_id);
  c.capitalize_first = field<bool>(j, "capitalize_first", c.capitalize_first);
  c.question_mark = field<bool>(j, "question_mark", c.question_mark);

  c.strategy = field<std::string>(j, "strategy", c.strategy);
  parse_strategy(c.strategy);  // validates
  c.k = field<std::size_t>(j, "k", c.k);
  c.top_n = field<std::size_t>(j, "top_n", c.top_n);
  if (c.k < 1) throw Error("config: k: must be >= 1");
  if (c.top_n < c.k) throw Error("config: top_n: must be >= k");

  if (j.contains("scorer")) {
    const Json& s = j["scorer"];
    require_known_keys(s,
                       {"learning_rate", "batch_size", "warmup_ratio",
                        "max_len_tokens", "epochs", "hidden_units"},
                       "scorer.");
    c.scorer.learning_rate = field<double>(s, "learning_rate", c.scorer.learning_rate);
    c.scorer.batch_size = field<std::size_t>(s, "batch_size", c.scorer.batch_size);
    c.scorer.warmup_ratio = field<double>(s, "warmup_ratio", c.scorer.warmup_ratio);
    c.scorer.max_len_tokens = field<std::size_t>(s, "max_len_tokens", c.scorer.max_len_tokens);
    c.scorer.epochs = field<std::size_t>(s, "epochs", c.scorer.epochs);
    c.scorer.hidden_units = field<std::size_t>(s, "hidden_units", c.scorer.hidden_units);
  }
  try {
    c.scorer.validate();
  } catch (const Error& e) {
    throw Error(std::string("config: ") + e.what());
  }

  if (j.contains("embedding")) {
    const Json& e = j["embedding"];
    require_known_keys(e,
                       {"dimension", "char_ngram_min", "char_ngram_max",
                        "use_word_unigrams", "hash_seed"},
                       "embedding.");
    c.embedding.dimension = field<std::size_t>(e, "dimension", c.embedding.dimension);
    c.embedding.char_ngram_min = field<std::size_t>(e, "char_ngram_min", c.embedding.char_ngram_min);
    c.embedding.char_ngram_max = field<std::size_t>(e, "char_ngram_max", c.embedding.char_ngram_max);
    c.embedding.use_word_unigrams = field<bool>(e, "use_word_unigrams", c.embedding.use_word_unigrams);
    c.embedding.hash_seed = field<std::uint64_t>(e, "hash_seed", c.embedding.hash_seed);
  }
  try {
    c.embedding.validate();
  } catch (const Error& e) {
    throw Error(std::string("config: embedding: ") + e.what());
  }

  c.n_unseen = field<std::size_t>(j, "n_unseen", c.n_unseen);
  c.train_fraction = field<double>(j, "train_fraction", c.train_fraction);
  if (!(c.train_fraction > 0.0) || c.train_fraction > 1.0)
    throw Error("config: train_fraction: must be in (0, 1]");
  c.seeds = field<std::vector<std::int64_t>>(j, "seeds", c.seeds);
  if (c.seeds.empty()) throw Error("config: seeds: must be non-empty");

  c.dataless = field<bool>(j, "dataless", c.dataless);
  c.dataless_n_per_intent =
      field<std::size_t>(j, "dataless_n_per_intent", c.dataless_n_per_intent);
  if (c.dataless_n_per_intent < 1)
    throw Error("config: dataless_n_per_intent: must be >= 1");

  if (j.contains("sweep")) {
    const Json& s = j["sweep"];
    require_known_keys(
        s, {"learning_rates", "batch_sizes", "warmup_ratios", "max_lens", "ks"},
        "sweep.");
    c.sweep.learning_rates =
        field<std::vector<double>>(s, "learning_rates", c.sweep.learning_rates);
    c.sweep.batch_sizes =
        field<std::vector<std::size_t>>(s, "batch_sizes", c.sweep.batch_sizes);
    c.sweep.warmup_ratios =
        field<std::vector<double>>(s, "warmup_ratios", c.sweep.warmup_ratios);
    c.sweep.max_lens = field<std::vector<std::size_t>>(s, "max_lens", c.sweep.max_lens);
    c.sweep.ks = field<std::vector<std::size_t>>(s, "ks", c.sweep.ks);
  }
  c.sweep.validate();
  c.sweep_runs_per_point =
      field<std::size_t>(j, "sweep_runs_per_point", c.sweep_runs_per_point);
  if (c.sweep_runs_per_point < 1)
    throw Error("config: sweep_runs_per_point: must be >= 1");

  c.output_dir = field<std::string>(j, "output_dir", c.output_dir);
  return c;
}

Json config_to_json(const ExperimentConfig& c) {
  Json j{{"utterances", c.utterances_path},
         {"intents", c.intents_path},
         {"intent_text_source", c.intent_text_source},
         {"template_id", c.template_id},
         {"capitalize_first", c.capitalize_first},
         {"question_mark", c.question_mark},
         {"strategy", c.strategy},
         {"k", c.k},
         {"top_n", c.top_n},
         {"scorer",
          Json{{"learning_rate", c.scorer.learning_rate},
               {"batch_size", c.scorer.batch_size},
               {"warmup_ratio", c.scorer.warmup_ratio},
               {"max_len_tokens", c.scorer.max_len_tokens},
               {"epochs", c.scorer.epochs},
               {"hidden_units", c.scorer.hidden_units}}},
         {"embedding",
          Json{{"dimension", c.embedding.dimension},
               {"char_ngram_min", c.embedding.char_ngram_min},
               {"char_ngram_max", c.embedding.char_ngram_max},
               {"use_word_unigrams", c.embedding.use_word_unigrams},
               {"hash_seed", c.embedding.hash_seed}}},
         {"n_unseen", c.n_unseen},
         {"train_fraction", c.train_fraction},
         {"seeds", c.seeds},
         {"dataless", c.dataless},
         {"dataless_n_per_intent", c.dataless_n_per_intent},
         {"sweep",
          Json{{"learning_rates", c.sweep.learning_rates},
               {"batch_sizes", c.sweep.batch_sizes},
               {"warmup_ratios", c.sweep.warmup_ratios},
               {"max_lens", c.sweep.max_lens},
               {"ks", c.sweep.ks}}},
         {"sweep_runs_per_point", c.sweep_runs_per_point},
         {"output_dir", c.output_dir}};
  if (c.split_path) j["split"] = *c.split_path;
  if (c.templates_path) j["templates"] = *c.templates_path;
  return j;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return config_from_json(read_json_file(path));
}

std::string config_fingerprint(const ExperimentConfig& config) {
  // The output directory is where results land, not what they are.
  ExperimentConfig canonical = config;
  canonical.output_dir.clear();
  std::uint64_t h = fnv1a64(config_to_json(canonical).dump());
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentOptions to_experiment_options(const ExperimentConfig& config) {
  ExperimentOptions opts;
  opts.model.text_source.kind = parse_intent_text_kind(config.intent_text_source);
  opts.model.text_source.template_id = config.template_id;
  opts.model.text_source.lex_options.capitalize_first = config.capitalize_first;
  opts.model.text_source.lex_options.question_mark = config.question_mark;
  opts.model.sampling.strategy = parse_strategy(config.strategy);
  opts.model.sampling.k = config.k;
  opts.model.sampling.top_n = config.top_n;
  opts.model.scorer = config.scorer;
  opts.model.embedding = config.embedding;
  if (config.templates_path)
    opts.model.templates = load_templates(*config.templates_path);
  opts.n_unseen = config.n_unseen;
  opts.train_fraction = config.train_fraction;
  if (config.split_path) opts.fixed_split = load_split(*config.split_path);
  opts.seeds = config.seeds;
  opts.config_fingerprint = config_fingerprint(config);
  opts.dataless = config.dataless;
  opts.dataless_n_per_intent = config.dataless_n_per_intent;
  return opts;
}

std::vector<SweepRow> run_sweep(const Dataset& dataset,
                                const ExperimentConfig& config) {
  std::vector<SweepPoint> points = expand_grid(config.sweep);
  std::vector<std::int64_t> seeds = config.seeds;
  if (seeds.size() > config.sweep_runs_per_point)
    seeds.resize(config.sweep_runs_per_point);

  std::vector<SweepRow> rows;
  rows.reserve(points.size());
  for (const SweepPoint& p : points) {
    ExperimentConfig point_config = config;
    point_config.scorer.learning_rate = p.learning_rate;
    point_config.scorer.batch_size = p.batch_size;
    point_config.scorer.warmup_ratio = p.warmup_ratio;
    point_config.scorer.max_len_tokens = p.max_len_tokens;
    point_config.k = p.k;
    ExperimentOptions opts = to_experiment_options(point_config);
    opts.seeds = seeds;
    rows.push_back({p, run_experiment(dataset, opts)});
  }
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    double fa = a.report.partitions.at("overall").at("weighted_f1").mean;
    double fb = b.report.partitions.at("overall").at("weighted_f1").mean;
    return fa > fb;
  });
  return rows;
}

namespace {

Json point_to_json(const SweepPoint& p) {
  return Json{{"learning_rate", p.learning_rate},
              {"batch_size", p.batch_size},
              {"warmup_ratio", p.warmup_ratio},
              {"max_len_tokens", p.max_len_tokens},
              {"k", p.k}};
}

}  // namespace

Json sweep_to_json(const std::vector<SweepRow>& rows, const std::string& fingerprint) {
  Json out = Json::array();
  for (const auto& row : rows) {
    out.push_back(Json{{"point", point_to_json(row.point)},
                       {"report", report_to_json(row.report)}});
  }
  return Json{{"config_fingerprint", fingerprint}, {"results", out}};
}

std::string sweep_to_markdown(const std::vector<SweepRow>& rows) {
  std::string md;
  md += "| Rank | lr | batch | warmup | max_len | k | Unseen F1 | Seen F1 | Overall F1 |\n";
  md += "|---|---|---|---|---|---|---|---|---|\n";
  char buf[64];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    std::snprintf(buf, sizeof(buf), "%g", row.point.learning_rate);
    md += "| " + std::to_string(i + 1) + " | " + buf;
    md += " | " + std::to_string(row.point.batch_size);
    std::snprintf(buf, sizeof(buf), "%g", row.point.warmup_ratio);
    md += " | " + std::string(buf);
    md += " | " + std::to_string(row.point.max_len_tokens);
    md += " | " + std::to_string(row.point.k);
    auto cell = [&](const char* partition) {
      auto p = row.report.partitions.find(partition);
      if (p == row.report.partitions.end()) return std::string("-");
      return format_mean_std(p->second.at("weighted_f1"));
    };
    md += " | " + cell("unseen") + " | " + cell("seen") + " | " + cell("overall") + " |\n";
  }
  return md;
}

}  // namespace gzsl
