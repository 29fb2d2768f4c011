#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gzsl/corpus.hpp"
#include "gzsl/jsonl.hpp"

namespace gzsl {

struct Metrics {
  double accuracy = 0.0;
  double weighted_f1 = 0.0;
  std::size_t support = 0;
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample std, n-1 denominator; 0 for a single run
};

// Per-partition aggregates over runs; partitions absent when never populated.
struct EvalReport {
  std::map<std::string, std::map<std::string, MeanStd>> partitions;
  std::map<std::string, std::vector<Metrics>> runs;
  std::string config_fingerprint;
  std::vector<std::int64_t> seeds;
};

double accuracy(const std::vector<std::string>& gold,
                const std::vector<std::string>& pred);

// Per-class F1 averaged with class support in gold as the weight.
// Precision/recall/F1 default to 0 when their denominators vanish.
double weighted_f1(const std::vector<std::string>& gold,
                   const std::vector<std::string>& pred);

struct PartitionedMetrics {
  std::optional<Metrics> seen;
  std::optional<Metrics> unseen;
  Metrics overall;
};

// Items partition by gold intent: seen iff gold is in the split's seen set.
PartitionedMetrics partitioned_report(const GzslSplit& split,
                                      const std::vector<std::string>& gold,
                                      const std::vector<std::string>& pred);

MeanStd aggregate(const std::vector<double>& values);

Json report_to_json(const EvalReport& report);

// One row per label: Unseen/Seen/Overall x Acc/F1, "mean +- std" cells.
std::string report_to_markdown(const EvalReport& report,
                               const std::string& row_label = "result");
std::string format_mean_std(const MeanStd& value);

}  // namespace gzsl
