#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gzsl/analysis.hpp"
#include "gzsl/config.hpp"
#include "gzsl/corpus.hpp"
#include "gzsl/dataless.hpp"
#include "gzsl/demo.hpp"
#include "gzsl/error.hpp"
#include "gzsl/jsonl.hpp"
#include "gzsl/lexicalize.hpp"
#include "gzsl/ngram_lm.hpp"
#include "gzsl/pipeline.hpp"
#include "gzsl/scorer.hpp"
#include "gzsl/text.hpp"

namespace fs = std::filesystem;
using namespace gzsl;

namespace {

// GZSL_OUTPUT_ROOT prefixes relative output directories.
fs::path resolve_output_dir(const std::string& dir) {
  fs::path p(dir);
  if (p.is_absolute()) return p;
  if (const char* root = std::getenv("GZSL_OUTPUT_ROOT")) return fs::path(root) / p;
  return p;
}

Dataset load_config_dataset(const ExperimentConfig& config) {
  if (config.utterances_path.empty() || config.intents_path.empty())
    throw Error("config: utterances and intents paths are required");
  return load_dataset(config.utterances_path, config.intents_path);
}

std::vector<std::string> read_label_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) labels.push_back(line);
  }
  return labels;
}

GzslSplit split_for_seed(const Dataset& dataset, const ExperimentConfig& config,
                         std::int64_t seed) {
  if (config.split_path) return load_split(*config.split_path);
  if (config.n_unseen == 0)
    throw Error("config: n_unseen must be set when no split file is given");
  return make_gzsl_split(dataset, config.n_unseen, config.train_fraction,
                         static_cast<std::uint64_t>(seed));
}

GzslOptions model_options(const ExperimentConfig& config, std::int64_t seed) {
  ExperimentOptions opts = to_experiment_options(config);
  opts.model.sampling.seed = static_cast<std::uint64_t>(seed);
  opts.model.scorer.seed = static_cast<std::uint64_t>(seed);
  return opts.model;
}

std::vector<ScoreRequest> test_set_requests(const Dataset& dataset,
                                            const GzslModel& model) {
  std::vector<ScoreRequest> requests;
  std::size_t n = 0;
  for (const auto& utt_id : model.split.test) {
    const Utterance* u = dataset.find_utterance(utt_id);
    if (!u) throw Error("test utterance not in dataset: " + utt_id);
    for (const auto& [intent_id, text] : model.intent_text_map)
      requests.push_back({"q" + std::to_string(n++), text, u->text});
  }
  return requests;
}

int cmd_ingest(const std::string& dialogues_path, const std::string& out_dir,
               std::size_t min_tokens, const std::string& stoplist_path) {
  fs::path dir = resolve_output_dir(out_dir);
  std::vector<Dialogue> dialogues = load_dialogues(dialogues_path);
  Dataset dataset = normalize_dialogue_corpus(dialogues);
  std::set<std::string> stoplist = default_stoplist();
  if (!stoplist_path.empty()) {
    stoplist.clear();
    for (const auto& phrase : read_label_lines(stoplist_path))
      stoplist.insert(normalize_text(phrase));
  }
  dataset = filter_uninformative(dataset, stoplist, min_tokens);
  dataset.validate();
  save_dataset(dataset, dir / "utterances.jsonl", dir / "intents.jsonl");
  std::cout << "ingested " << dataset.utterances.size() << " utterances across "
            << dataset.intents.size() << " intents\n";
  return 0;
}

int cmd_split(const ExperimentConfig& config, std::size_t n_unseen, std::int64_t seed,
              const std::string& out_dir) {
  Dataset dataset = load_config_dataset(config);
  if (n_unseen == 0) n_unseen = config.n_unseen;
  GzslSplit split = make_gzsl_split(dataset, n_unseen, config.train_fraction,
                                    static_cast<std::uint64_t>(seed));
  fs::path dir = resolve_output_dir(out_dir);
  save_split(split, dir / "split.json");
  std::cout << "seen " << split.seen.size() << ", unseen " << split.unseen.size()
            << ", train " << split.train.size() << ", test " << split.test.size()
            << "\n";
  return 0;
}

int cmd_lexicalize(const std::string& labels_path, const std::string& template_id,
                   const std::string& templates_path, const std::string& out_path,
                   bool capitalize, bool question_mark) {
  std::vector<Template> templates =
      templates_path.empty() ? builtin_templates() : load_templates(templates_path);
  const Template& tmpl = find_template(templates, template_id);
  LexicalizeOptions opts;
  opts.capitalize_first = capitalize;
  opts.question_mark = question_mark;

  std::vector<Json> records;
  for (const auto& label : read_label_lines(labels_path)) {
    LexicalizedIntent lex = apply_template(label, label, tmpl, opts);
    if (out_path.empty()) {
      std::cout << lex.sentence << "\n";
    } else {
      records.push_back(Json{{"intent_id", lex.intent_id},
                             {"template_id", lex.template_id},
                             {"sentence", lex.sentence}});
    }
  }
  if (!out_path.empty()) write_jsonl(resolve_output_dir(out_path), records);
  return 0;
}

int cmd_train(const ExperimentConfig& config, const std::string& out_dir,
              bool dump_pair_file) {
  Dataset dataset = load_config_dataset(config);
  std::int64_t seed = config.seeds.front();
  GzslSplit split = split_for_seed(dataset, config, seed);
  GzslOptions opts = model_options(config, seed);

  GzslModel model = config.dataless
                        ? train_gzsl_dataless(dataset, split, opts,
                                              config.dataless_n_per_intent)
                        : train_gzsl(dataset, split, opts);

  fs::path dir = resolve_output_dir(out_dir.empty() ? config.output_dir : out_dir);
  save_split(split, dir / "split.json");
  save_model(model, dir / "model.json");
  if (dump_pair_file) {
    std::map<std::string, std::string> texts =
        build_intent_texts(dataset, split.seen, opts.text_source, opts.templates);
    auto pairs = build_training_set(dataset, split, texts, opts.sampling, opts.embedding);
    dump_pairs(pairs, dir / "pairs.jsonl");
  }
  Json meta{{"config_fingerprint", config_fingerprint(config)},
            {"seed", seed},
            {"shortage_events", model.sampling_stats.shortage_events},
            {"with_replacement_events", model.sampling_stats.with_replacement_events}};
  write_json_file(dir / "train_meta.json", meta);
  std::cout << "model written to " << (dir / "model.json").string() << "\n";
  return 0;
}

int cmd_predict(const ExperimentConfig& config, const std::string& model_path,
                const std::string& out_dir, const std::string& external_request,
                const std::string& external_response) {
  Dataset dataset = load_config_dataset(config);
  GzslModel model = load_model(model_path);
  fs::path dir = resolve_output_dir(out_dir.empty() ? config.output_dir : out_dir);

  if (!external_request.empty()) {
    std::vector<ScoreRequest> requests = test_set_requests(dataset, model);
    write_score_requests(requests, resolve_output_dir(external_request));
    std::cout << "wrote " << requests.size() << " score requests\n";
    return 0;
  }
  if (!external_response.empty()) {
    std::vector<ScoreRequest> requests = test_set_requests(dataset, model);
    auto responses = read_score_responses(resolve_output_dir(external_response), requests);
    model.scorer = std::make_shared<ExternalScorer>(requests, responses);
  }

  auto preds = predict_test_set(model, dataset);
  save_predictions(preds, dir / "predictions.jsonl", config_fingerprint(config),
                   model.split.seed);
  std::cout << "wrote " << preds.size() << " predictions\n";
  return 0;
}

int cmd_eval(const ExperimentConfig& config, const std::string& predictions_path,
             const std::string& split_path, const std::string& out_dir) {
  fs::path dir = resolve_output_dir(out_dir.empty() ? config.output_dir : out_dir);
  EvalReport report;

  if (!predictions_path.empty()) {
    // Evaluate an existing prediction file against its split.
    if (split_path.empty()) throw Error("eval: --split is required with --predictions");
    GzslSplit split = load_split(split_path);
    std::vector<std::string> gold, pred;
    for (const auto& rec : read_jsonl(predictions_path)) {
      gold.push_back(rec.at("gold").get<std::string>());
      pred.push_back(rec.at("pred").get<std::string>());
    }
    PartitionedMetrics m = partitioned_report(split, gold, pred);
    report.config_fingerprint = config_fingerprint(config);
    report.seeds = {split.seed};
    if (m.seen) report.runs["seen"].push_back(*m.seen);
    if (m.unseen) report.runs["unseen"].push_back(*m.unseen);
    report.runs["overall"].push_back(m.overall);
    for (const auto& [partition, runs] : report.runs) {
      report.partitions[partition]["accuracy"] = aggregate({runs[0].accuracy});
      report.partitions[partition]["weighted_f1"] = aggregate({runs[0].weighted_f1});
    }
  } else {
    // Full multi-seed experiment from the config.
    Dataset dataset = load_config_dataset(config);
    ExperimentOptions opts = to_experiment_options(config);
    report = run_experiment(dataset, opts);
  }

  write_json_file(dir / "report.json", report_to_json(report));
  write_text_file(dir / "report.md", report_to_markdown(report, "result"));
  std::cout << report_to_markdown(report, "result");
  return 0;
}

int cmd_analyze(const ExperimentConfig& config, const std::string& predictions_path,
                const std::string& split_path, const std::string& out_dir,
                std::size_t top_k) {
  Dataset dataset = load_config_dataset(config);
  GzslSplit split = load_split(split_path);

  std::vector<PredictionRecord> preds;
  for (const auto& rec : read_jsonl(predictions_path)) {
    PredictionRecord p;
    p.utterance_id = rec.at("utterance_id").get<std::string>();
    p.gold = rec.at("gold").get<std::string>();
    p.pred = rec.at("pred").get<std::string>();
    preds.push_back(std::move(p));
  }

  std::map<std::string, std::string> labels;
  for (const auto& intent : dataset.intents) labels[intent.id] = intent.label;

  // Stress factors compare each utterance against its raw gold label text.
  std::vector<std::string> test_texts;
  for (const auto& p : preds) {
    const Utterance* u = dataset.find_utterance(p.utterance_id);
    if (!u) throw Error("prediction references unknown utterance: " + p.utterance_id);
    test_texts.push_back(u->text);
  }
  auto trigram_counts = leading_trigram_counts(test_texts);
  std::vector<StressFeatures> features;
  for (const auto& p : preds) {
    const Utterance* u = dataset.find_utterance(p.utterance_id);
    features.push_back(stress_features(u->text, labels.at(u->intent_id),
                                       trigram_counts, config.embedding));
  }

  StressReport stress = stress_report(preds, features);
  auto confusions = confusion_pairs(preds, labels, top_k);

  fs::path dir = resolve_output_dir(out_dir.empty() ? config.output_dir : out_dir);
  Json stress_json = stress_report_to_json(stress);
  stress_json["config_fingerprint"] = config_fingerprint(config);
  stress_json["seed"] = split.seed;
  write_json_file(dir / "stress.json", stress_json);
  write_text_file(dir / "stress.md", stress_report_to_markdown(stress));

  Json conf = Json::array();
  for (const auto& c : confusions)
    conf.push_back(Json{{"gold", c.gold},
                        {"pred", c.pred},
                        {"count", c.count},
                        {"shares_word", c.shares_word}});
  write_json_file(dir / "confusions.json",
                  Json{{"config_fingerprint", config_fingerprint(config)},
                       {"seed", split.seed},
                       {"pairs", conf}});
  std::cout << stress_report_to_markdown(stress);
  return 0;
}

int cmd_acceptability(const ExperimentConfig& config, const std::string& corpus_path,
                      const std::string& out_dir) {
  Dataset dataset = load_config_dataset(config);

  // LM corpus: an explicit sentence file, else the dataset's utterances.
  std::vector<std::string> sentences;
  if (!corpus_path.empty()) {
    sentences = read_label_lines(corpus_path);
  } else {
    for (const auto& u : dataset.utterances) sentences.push_back(u.text);
  }
  NgramLm lm = NgramLm::train(sentences);

  std::vector<std::string> labels;
  for (const auto& intent : dataset.intents) labels.push_back(intent.label);
  std::vector<Template> templates = config.templates_path
                                        ? load_templates(*config.templates_path)
                                        : builtin_templates();
  auto rows = acceptability_compare(labels, templates, lm);

  fs::path dir = resolve_output_dir(out_dir.empty() ? config.output_dir : out_dir);
  write_json_file(dir / "acceptability.json",
                  Json{{"config_fingerprint", config_fingerprint(config)},
                       {"table", acceptability_table_to_json(rows)}});
  write_text_file(dir / "acceptability.md", acceptability_table_to_markdown(rows));
  std::cout << acceptability_table_to_markdown(rows);
  return 0;
}

int cmd_dataless(const ExperimentConfig& config, const std::string& out_dir) {
  Dataset dataset = load_config_dataset(config);
  std::int64_t seed = config.seeds.front();
  GzslSplit split = split_for_seed(dataset, config, seed);
  GzslOptions opts = model_options(config, seed);
  auto synthetic =
      build_synthetic_trainset(dataset, split.seen, opts.templates, all_families(),
                               config.dataless_n_per_intent, opts.sampling.seed);
  fs::path dir = resolve_output_dir(out_dir.empty() ? config.output_dir : out_dir);
  save_synthetic(synthetic, dir / "synthetic.jsonl");
  std::cout << "wrote " << synthetic.size() << " synthetic utterances\n";
  return 0;
}

int cmd_sweep(const ExperimentConfig& config, const std::string& out_dir) {
  Dataset dataset = load_config_dataset(config);
  auto rows = run_sweep(dataset, config);
  fs::path dir = resolve_output_dir(out_dir.empty() ? config.output_dir : out_dir);
  write_json_file(dir / "sweep.json", sweep_to_json(rows, config_fingerprint(config)));
  write_text_file(dir / "sweep.md", sweep_to_markdown(rows));
  std::cout << sweep_to_markdown(rows);
  return 0;
}

int cmd_demo_corpus(std::size_t n_intents, std::size_t per_intent, std::uint64_t seed,
                    const std::string& out_dir) {
  fs::path dir = resolve_output_dir(out_dir);
  Dataset dataset = make_demo_corpus({n_intents, per_intent, seed});
  save_dataset(dataset, dir / "utterances.jsonl", dir / "intents.jsonl");

  std::vector<Json> dialogue_lines;
  for (const auto& d : make_demo_dialogues(seed)) {
    Json turns = Json::array();
    for (const auto& t : d.turns)
      turns.push_back(Json{{"text", t.text}, {"intent", t.intent_id}});
    dialogue_lines.push_back(Json{{"dialogue_id", d.id}, {"turns", turns}});
  }
  write_jsonl(dir / "dialogues.jsonl", dialogue_lines);
  std::cout << "demo corpus: " << dataset.utterances.size() << " utterances, "
            << dataset.intents.size() << " intents\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized zero-shot intent recognition toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir, dialogues_path, stoplist_path;
  std::string labels_path, template_id = "d1", templates_path, out_path;
  std::string model_path, predictions_path, split_path;
  std::string external_request, external_response, corpus_path;
  std::size_t min_tokens = 2, top_k = 20;
  std::int64_t seed = 11;
  bool capitalize = false, question_mark = false, dump_pair_file = false;
  std::size_t demo_intents = 20, demo_per_intent = 40;
  std::uint64_t demo_seed = 7;

  auto* ingest = app.add_subcommand("ingest", "normalize a dialogue corpus");
  ingest->add_option("--dialogues", dialogues_path, "dialogue JSONL file")->required();
  ingest->add_option("--out-dir", out_dir, "output directory")->required();
  ingest->add_option("--min-tokens", min_tokens, "minimum tokens per utterance");
  ingest->add_option("--stoplist", stoplist_path, "stoplist file, one phrase per line");

  std::size_t n_unseen_flag = 0;
  auto* split_cmd = app.add_subcommand("split", "construct a gzsl split");
  split_cmd->add_option("--config", config_path, "experiment config")->required();
  split_cmd->add_option("--n-unseen", n_unseen_flag, "overrides the config value");
  split_cmd->add_option("--seed", seed, "split seed");
  split_cmd->add_option("--out-dir", out_dir, "output directory")->required();

  auto* lex = app.add_subcommand("lexicalize", "turn labels into sentences");
  lex->add_option("--labels", labels_path, "label file, one label per line")->required();
  lex->add_option("--template", template_id, "template id");
  lex->add_option("--templates-file", templates_path, "template JSONL file");
  lex->add_option("--out", out_path, "output JSONL (prints to stdout if omitted)");
  lex->add_flag("--capitalize", capitalize, "capitalize the first letter");
  lex->add_flag("--question-mark", question_mark, "append ? on question templates");

  auto* train = app.add_subcommand("train", "train a model for one seed");
  train->add_option("--config", config_path, "experiment config")->required();
  train->add_option("--out-dir", out_dir, "output directory");
  train->add_flag("--dump-pairs", dump_pair_file, "write the training pairs");

  auto* predict_cmd = app.add_subcommand("predict", "predict the test partition");
  predict_cmd->add_option("--config", config_path, "experiment config")->required();
  predict_cmd->add_option("--model", model_path, "model file")->required();
  predict_cmd->add_option("--out-dir", out_dir, "output directory");
  predict_cmd->add_option("--external-request", external_request,
                          "write score requests here and exit");
  predict_cmd->add_option("--external-response", external_response,
                          "read scores from an external scorer");

  auto* eval_cmd =
      app.add_subcommand("eval", "evaluate predictions or run the full experiment");
  eval_cmd->add_option("--config", config_path, "experiment config")->required();
  eval_cmd->add_option("--predictions", predictions_path, "prediction JSONL to evaluate");
  eval_cmd->add_option("--split", split_path, "split file for --predictions");
  eval_cmd->add_option("--out-dir", out_dir, "output directory");

  auto* analyze = app.add_subcommand("analyze", "stress factors and confusion pairs");
  analyze->add_option("--config", config_path, "experiment config")->required();
  analyze->add_option("--predictions", predictions_path, "prediction JSONL")->required();
  analyze->add_option("--split", split_path, "split file")->required();
  analyze->add_option("--out-dir", out_dir, "output directory");
  analyze->add_option("--top-k", top_k, "confusion pairs to keep");

  auto* acc = app.add_subcommand("acceptability", "score labels vs lexicalizations");
  acc->add_option("--config", config_path, "experiment config")->required();
  acc->add_option("--corpus", corpus_path, "LM sentence file (defaults to utterances)");
  acc->add_option("--out-dir", out_dir, "output directory");

  auto* dataless_cmd = app.add_subcommand("dataless", "emit a synthetic training set");
  dataless_cmd->add_option("--config", config_path, "experiment config")->required();
  dataless_cmd->add_option("--out-dir", out_dir, "output directory");

  auto* sweep_cmd =
      app.add_subcommand("sweep", "enumerate and run the hyperparameter grid");
  sweep_cmd->add_option("--config", config_path, "experiment config")->required();
  sweep_cmd->add_option("--out-dir", out_dir, "output directory");

  auto* demo = app.add_subcommand("demo-corpus", "write the bundled synthetic corpus");
  demo->add_option("--n-intents", demo_intents, "number of intents");
  demo->add_option("--per-intent", demo_per_intent, "utterances per intent");
  demo->add_option("--seed", demo_seed, "generation seed");
  demo->add_option("--out-dir", out_dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(ingest))
      return cmd_ingest(dialogues_path, out_dir, min_tokens, stoplist_path);
    if (app.got_subcommand(demo))
      return cmd_demo_corpus(demo_intents, demo_per_intent, demo_seed, out_dir);
    if (app.got_subcommand(lex))
      return cmd_lexicalize(labels_path, template_id, templates_path, out_path,
                            capitalize, question_mark);

    ExperimentConfig config;
    if (!config_path.empty()) config = load_config(config_path);

    if (app.got_subcommand(split_cmd))
      return cmd_split(config, n_unseen_flag, seed, out_dir);
    if (app.got_subcommand(train)) return cmd_train(config, out_dir, dump_pair_file);
    if (app.got_subcommand(predict_cmd))
      return cmd_predict(config, model_path, out_dir, external_request,
                         external_response);
    if (app.got_subcommand(eval_cmd))
      return cmd_eval(config, predictions_path, split_path, out_dir);
    if (app.got_subcommand(analyze))
      return cmd_analyze(config, predictions_path, split_path, out_dir, top_k);
    if (app.got_subcommand(acc)) return cmd_acceptability(config, corpus_path, out_dir);
    if (app.got_subcommand(dataless_cmd)) return cmd_dataless(config, out_dir);
    if (app.got_subcommand(sweep_cmd)) return cmd_sweep(config, out_dir);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
