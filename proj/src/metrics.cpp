#include "gzsl/metrics.hpp"

#include <cmath>
#include <cstdio>

#include "gzsl/error.hpp"

namespace gzsl {

double accuracy(const std::vector<std::string>& gold,
                const std::vector<std::string>& pred) {
  if (gold.size() != pred.size()) throw Error("accuracy: length mismatch");
  if (gold.empty()) throw Error("accuracy: empty inputs");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < gold.size(); ++i)
    if (gold[i] == pred[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(gold.size());
}

double weighted_f1(const std::vector<std::string>& gold,
                   const std::vector<std::string>& pred) {
  if (gold.size() != pred.size()) throw Error("weighted_f1: length mismatch");
  if (gold.empty()) throw Error("weighted_f1: empty inputs");

  std::map<std::string, std::size_t> support;   // gold count per class
  std::map<std::string, std::size_t> tp;
  std::map<std::string, std::size_t> pred_count;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    support[gold[i]]++;
    pred_count[pred[i]]++;
    if (gold[i] == pred[i]) tp[gold[i]]++;
  }

  double sum = 0.0;
  for (const auto& [cls, sup] : support) {
    double t = static_cast<double>(tp.count(cls) ? tp[cls] : 0);
    double p_den = static_cast<double>(pred_count.count(cls) ? pred_count[cls] : 0);
    double precision = p_den > 0 ? t / p_den : 0.0;
    double recall = t / static_cast<double>(sup);
    double f1 = (precision + recall) > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
    sum += f1 * static_cast<double>(sup);
  }
  return sum / static_cast<double>(gold.size());
}

namespace {

Metrics compute_metrics(const std::vector<std::string>& gold,
                        const std::vector<std::string>& pred) {
  Metrics m;
  m.accuracy = accuracy(gold, pred);
  m.weighted_f1 = weighted_f1(gold, pred);
  m.support = gold.size();
  return m;
}

}  // namespace

PartitionedMetrics partitioned_report(const GzslSplit& split,
                                      const std::vector<std::string>& gold,
                                      const std::vector<std::string>& pred) {
  if (gold.size() != pred.size()) throw Error("partitioned_report: length mismatch");
  std::vector<std::string> seen_gold, seen_pred, unseen_gold, unseen_pred;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (split.is_seen(gold[i])) {
      seen_gold.push_back(gold[i]);
      seen_pred.push_back(pred[i]);
    } else if (split.is_unseen(gold[i])) {
      unseen_gold.push_back(gold[i]);
      unseen_pred.push_back(pred[i]);
    } else {
      throw Error("partitioned_report: gold intent outside seen+unseen: " + gold[i]);
    }
  }
  PartitionedMetrics out;
  if (!seen_gold.empty()) out.seen = compute_metrics(seen_gold, seen_pred);
  if (!unseen_gold.empty()) out.unseen = compute_metrics(unseen_gold, unseen_pred);
  out.overall = compute_metrics(gold, pred);
  return out;
}

MeanStd aggregate(const std::vector<double>& values) {
  if (values.empty()) throw Error("aggregate: no runs");
  MeanStd out;
  for (double v : values) out.mean += v;
  out.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return out;
}

Json report_to_json(const EvalReport& report) {
  Json partitions = Json::object();
  for (const auto& [name, metrics] : report.partitions) {
    Json entry = Json::object();
    for (const auto& [metric, value] : metrics)
      entry[metric] = Json{{"mean", value.mean}, {"std", value.std}};
    partitions[name] = std::move(entry);
  }
  Json runs = Json::object();
  for (const auto& [name, values] : report.runs) {
    Json arr = Json::array();
    for (const auto& m : values)
      arr.push_back(Json{{"accuracy", m.accuracy},
                         {"weighted_f1", m.weighted_f1},
                         {"support", m.support}});
    runs[name] = std::move(arr);
  }
  return Json{{"config_fingerprint", report.config_fingerprint},
              {"seeds", report.seeds},
              {"partitions", partitions},
              {"runs", runs}};
}

std::string format_mean_std(const MeanStd& value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f \xC2\xB1 %.3f", value.mean, value.std);
  return buf;
}

namespace {

std::string cell(const EvalReport& report, const std::string& partition,
                 const std::string& metric) {
  auto p = report.partitions.find(partition);
  if (p == report.partitions.end()) return "-";
  auto m = p->second.find(metric);
  if (m == p->second.end()) return "-";
  return format_mean_std(m->second);
}

}  // namespace

std::string report_to_markdown(const EvalReport& report, const std::string& row_label) {
  std::string md;
  md += "| Method | Unseen Acc | Unseen F1 | Seen Acc | Seen F1 | Overall Acc | Overall F1 |\n";
  md += "|---|---|---|---|---|---|---|\n";
  md += "| " + row_label;
  for (const char* partition : {"unseen", "seen", "overall"}) {
    md += " | " + cell(report, partition, "accuracy");
    md += " | " + cell(report, partition, "weighted_f1");
  }
  md += " |\n";
  return md;
}

}  // namespace gzsl
