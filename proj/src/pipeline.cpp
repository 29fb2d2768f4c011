#include "gzsl/pipeline.hpp"

#include <algorithm>

#include "gzsl/error.hpp"
#include "gzsl/jsonl.hpp"

namespace gzsl {

IntentTextKind parse_intent_text_kind(const std::string& name) {
  if (name == "label") return IntentTextKind::kLabel;
  if (name == "description") return IntentTextKind::kDescription;
  if (name == "template") return IntentTextKind::kTemplate;
  throw Error("unknown intent text source: " + name +
              " (expected label|description|template)");
}

std::string intent_text_kind_name(IntentTextKind kind) {
  switch (kind) {
    case IntentTextKind::kLabel: return "label";
    case IntentTextKind::kDescription: return "description";
    case IntentTextKind::kTemplate: return "template";
  }
  throw Error("invalid intent text kind");
}

std::map<std::string, std::string> build_intent_texts(
    const Dataset& dataset, const std::vector<std::string>& intent_ids,
    const IntentTextSource& source, const std::vector<Template>& templates) {
  std::map<std::string, std::string> out;
  for (const auto& id : intent_ids) {
    const Intent* intent = dataset.find_intent(id);
    if (!intent) throw Error("intent not in dataset: " + id);
    switch (source.kind) {
      case IntentTextKind::kLabel:
        out[id] = intent->label;
        break;
      case IntentTextKind::kDescription:
        if (!intent->description)
          throw Error("intent " + id + " has no description");
        out[id] = *intent->description;
        break;
      case IntentTextKind::kTemplate: {
        const Template& tmpl = find_template(templates, source.template_id);
        out[id] = apply_template(id, intent->label, tmpl, source.lex_options).sentence;
        break;
      }
    }
  }
  return out;
}

GzslModel train_gzsl(const Dataset& dataset, const GzslSplit& split,
                     const GzslOptions& options) {
  split.validate(dataset);

  // Training consults seen intents only; the full candidate map is built
  // afterwards for inference.
  std::map<std::string, std::string> seen_texts =
      build_intent_texts(dataset, split.seen, options.text_source, options.templates);

  SamplingStats stats;
  std::vector<TrainingPair> pairs = build_training_set(
      dataset, split, seen_texts, options.sampling, options.embedding, &stats);
  TrainedScorer scorer = train_scorer(pairs, options.scorer, options.embedding);

  GzslModel model;
  model.scorer = std::make_shared<TrainedScorer>(std::move(scorer));
  model.split = split;
  model.options = options;
  model.sampling_stats = stats;

  std::vector<std::string> all_ids = split.seen;
  all_ids.insert(all_ids.end(), split.unseen.begin(), split.unseen.end());
  model.intent_text_map =
      build_intent_texts(dataset, all_ids, options.text_source, options.templates);
  return model;
}

GzslModel train_gzsl_dataless(const Dataset& dataset, const GzslSplit& split,
                              const GzslOptions& options, std::size_t n_per_intent,
                              const std::vector<ParaphraseFamily>& families) {
  std::vector<SyntheticUtterance> synthetic = build_synthetic_trainset(
      dataset, split.seen, options.templates, families, n_per_intent,
      options.sampling.seed);
  auto [view, view_split] = dataless_view(dataset, split, synthetic);
  GzslModel model = train_gzsl(view, view_split, options);
  // Report metrics against the original split's seen/unseen partition.
  model.split = split;
  return model;
}

GzslModel assemble_gzsl(const Dataset& dataset, const GzslSplit& split,
                        const GzslOptions& options,
                        std::shared_ptr<const PairScorer> scorer) {
  split.validate(dataset);
  if (!scorer) throw Error("assemble_gzsl: null scorer");
  GzslModel model;
  model.scorer = std::move(scorer);
  model.split = split;
  model.options = options;
  std::vector<std::string> all_ids = split.seen;
  all_ids.insert(all_ids.end(), split.unseen.begin(), split.unseen.end());
  model.intent_text_map =
      build_intent_texts(dataset, all_ids, options.text_source, options.templates);
  return model;
}

Prediction predict(const GzslModel& model, const std::string& utterance) {
  if (utterance.empty()) throw Error("predict: empty utterance");
  if (model.intent_text_map.empty()) throw Error("predict: no candidate intents");
  Prediction out;
  double best = -1.0;
  // std::map iterates in id order, so the first strict improvement wins and
  // score ties resolve to the smallest intent id.
  for (const auto& [intent_id, text] : model.intent_text_map) {
    double p = model.scorer->score(text, utterance);
    out.scores[intent_id] = p;
    if (p > best) {
      best = p;
      out.intent_id = intent_id;
    }
  }
  return out;
}

std::vector<PredictionRecord> predict_test_set(const GzslModel& model,
                                               const Dataset& dataset) {
  std::map<std::string, const Utterance*> by_id;
  for (const auto& u : dataset.utterances) by_id[u.id] = &u;
  std::vector<PredictionRecord> out;
  out.reserve(model.split.test.size());
  for (const auto& id : model.split.test) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw Error("test utterance not in dataset: " + id);
    Prediction p = predict(model, it->second->text);
    out.push_back({id, it->second->intent_id, p.intent_id, std::move(p.scores)});
  }
  return out;
}

void save_predictions(const std::vector<PredictionRecord>& predictions,
                      const std::filesystem::path& path,
                      const std::string& config_fingerprint,
                      std::optional<std::int64_t> seed) {
  std::vector<Json> records;
  records.reserve(predictions.size());
  for (const auto& p : predictions) {
    Json rec{{"utterance_id", p.utterance_id},
             {"gold", p.gold},
             {"pred", p.pred},
             {"scores", p.scores}};
    if (!config_fingerprint.empty()) rec["config_fingerprint"] = config_fingerprint;
    if (seed) rec["seed"] = *seed;
    records.push_back(std::move(rec));
  }
  write_jsonl(path, records);
}

namespace {

Json options_to_json(const GzslOptions& o) {
  Json templates = Json::array();
  for (const auto& t : o.templates) {
    const char* kind = t.kind == TemplateKind::kDeclarative ? "declarative"
                       : t.kind == TemplateKind::kQuestion  ? "question"
                                                            : "imperative";
    templates.push_back(Json{{"id", t.id}, {"kind", kind}, {"prefix", t.prefix}});
  }
  return Json{
      {"intent_text_source", intent_text_kind_name(o.text_source.kind)},
      {"template_id", o.text_source.template_id},
      {"capitalize_first", o.text_source.lex_options.capitalize_first},
      {"question_mark", o.text_source.lex_options.question_mark},
      {"strategy", strategy_name(o.sampling.strategy)},
      {"k", o.sampling.k},
      {"top_n", o.sampling.top_n},
      {"sampling_seed", o.sampling.seed},
      {"scorer",
       Json{{"learning_rate", o.scorer.learning_rate},
            {"batch_size", o.scorer.batch_size},
            {"warmup_ratio", o.scorer.warmup_ratio},
            {"max_len_tokens", o.scorer.max_len_tokens},
            {"epochs", o.scorer.epochs},
            {"hidden_units", o.scorer.hidden_units},
            {"seed", o.scorer.seed}}},
      {"embedding",
       Json{{"dimension", o.embedding.dimension},
            {"char_ngram_min", o.embedding.char_ngram_min},
            {"char_ngram_max", o.embedding.char_ngram_max},
            {"use_word_unigrams", o.embedding.use_word_unigrams},
            {"hash_seed", o.embedding.hash_seed}}},
      {"templates", templates}};
}

GzslOptions options_from_json(const Json& j) {
  GzslOptions o;
  o.text_source.kind = parse_intent_text_kind(j.at("intent_text_source").get<std::string>());
  o.text_source.template_id = j.at("template_id").get<std::string>();
  o.text_source.lex_options.capitalize_first = j.at("capitalize_first").get<bool>();
  o.text_source.lex_options.question_mark = j.at("question_mark").get<bool>();
  o.sampling.strategy = parse_strategy(j.at("strategy").get<std::string>());
  o.sampling.k = j.at("k").get<std::size_t>();
  o.sampling.top_n = j.at("top_n").get<std::size_t>();
  o.sampling.seed = j.at("sampling_seed").get<std::uint64_t>();
  const Json& s = j.at("scorer");
  o.scorer.learning_rate = s.at("learning_rate").get<double>();
  o.scorer.batch_size = s.at("batch_size").get<std::size_t>();
  o.scorer.warmup_ratio = s.at("warmup_ratio").get<double>();
  o.scorer.max_len_tokens = s.at("max_len_tokens").get<std::size_t>();
  o.scorer.epochs = s.at("epochs").get<std::size_t>();
  o.scorer.hidden_units = s.at("hidden_units").get<std::size_t>();
  o.scorer.seed = s.at("seed").get<std::uint64_t>();
  const Json& e = j.at("embedding");
  o.embedding.dimension = e.at("dimension").get<std::size_t>();
  o.embedding.char_ngram_min = e.at("char_ngram_min").get<std::size_t>();
  o.embedding.char_ngram_max = e.at("char_ngram_max").get<std::size_t>();
  o.embedding.use_word_unigrams = e.at("use_word_unigrams").get<bool>();
  o.embedding.hash_seed = e.at("hash_seed").get<std::uint64_t>();
  o.templates.clear();
  for (const auto& t : j.at("templates")) {
    Template tmpl;
    tmpl.id = t.at("id").get<std::string>();
    std::string kind = t.at("kind").get<std::string>();
    tmpl.kind = kind == "declarative" ? TemplateKind::kDeclarative
                : kind == "question"  ? TemplateKind::kQuestion
                                      : TemplateKind::kImperative;
    tmpl.prefix = t.at("prefix").get<std::string>();
    o.templates.push_back(std::move(tmpl));
  }
  return o;
}

constexpr int kModelFormatVersion = 1;

}  // namespace

void save_model(const GzslModel& model, const std::filesystem::path& path) {
  const auto* trained = dynamic_cast<const TrainedScorer*>(model.scorer.get());
  if (!trained)
    throw Error("save_model: only models with the built-in scorer are savable");
  Json j{{"format", "gzsl-model"},
         {"version", kModelFormatVersion},
         {"options", options_to_json(model.options)},
         {"intent_texts", model.intent_text_map},
         {"split",
          Json{{"seen", model.split.seen},
               {"unseen", model.split.unseen},
               {"train", model.split.train},
               {"test", model.split.test},
               {"seed", model.split.seed}}},
         {"scorer",
          Json{{"params", trained->params()}, {"loss_curve", trained->loss_curve()}}}};
  write_json_file(path, j);
}

GzslModel load_model(const std::filesystem::path& path) {
  Json j = read_json_file(path);
  if (j.value("format", "") != "gzsl-model")
    throw Error(path.string() + ": not a model file");
  if (j.at("version").get<int>() != kModelFormatVersion)
    throw Error(path.string() + ": unsupported model version");
  GzslModel model;
  model.options = options_from_json(j.at("options"));
  model.intent_text_map =
      j.at("intent_texts").get<std::map<std::string, std::string>>();
  const Json& s = j.at("split");
  model.split.seen = s.at("seen").get<std::vector<std::string>>();
  model.split.unseen = s.at("unseen").get<std::vector<std::string>>();
  model.split.train = s.at("train").get<std::vector<std::string>>();
  model.split.test = s.at("test").get<std::vector<std::string>>();
  model.split.seed = s.at("seed").get<std::int64_t>();

  TrainedScorer scorer(model.options.embedding, model.options.scorer);
  scorer.mutable_params() = j.at("scorer").at("params").get<std::vector<double>>();
  if (scorer.params().size() != scorer.param_count())
    throw Error(path.string() + ": parameter count mismatch");
  model.scorer = std::make_shared<TrainedScorer>(std::move(scorer));
  return model;
}

EvalReport run_experiment(const Dataset& dataset, const ExperimentOptions& options) {
  if (options.seeds.empty()) throw Error("run_experiment: need at least one seed");

  EvalReport report;
  report.config_fingerprint = options.config_fingerprint;
  report.seeds = options.seeds;

  for (std::int64_t seed : options.seeds) {
    GzslSplit split;
    if (options.fixed_split) {
      split = *options.fixed_split;
    } else {
      split = make_gzsl_split(dataset, options.n_unseen, options.train_fraction,
                              static_cast<std::uint64_t>(seed));
    }
    GzslOptions run_options = options.model;
    run_options.sampling.seed = static_cast<std::uint64_t>(seed);
    run_options.scorer.seed = static_cast<std::uint64_t>(seed);

    GzslModel model =
        options.dataless
            ? train_gzsl_dataless(dataset, split, run_options,
                                  options.dataless_n_per_intent)
            : train_gzsl(dataset, split, run_options);
    std::vector<PredictionRecord> preds = predict_test_set(model, dataset);
    std::vector<std::string> gold, pred;
    gold.reserve(preds.size());
    for (const auto& p : preds) {
      gold.push_back(p.gold);
      pred.push_back(p.pred);
    }
    PartitionedMetrics m = partitioned_report(split, gold, pred);
    if (m.seen) report.runs["seen"].push_back(*m.seen);
    if (m.unseen) report.runs["unseen"].push_back(*m.unseen);
    report.runs["overall"].push_back(m.overall);
  }

  for (const auto& [partition, runs] : report.runs) {
    std::vector<double> acc, f1;
    for (const auto& m : runs) {
      acc.push_back(m.accuracy);
      f1.push_back(m.weighted_f1);
    }
    report.partitions[partition]["accuracy"] = aggregate(acc);
    report.partitions[partition]["weighted_f1"] = aggregate(f1);
  }
  return report;
}

}  // namespace gzsl
