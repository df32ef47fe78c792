#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lsmjoin/bench/config.hpp"
#include "lsmjoin/cost/cost_model.hpp"
#include "lsmjoin/workload/stats.hpp"

namespace lsmjoin::bench {

struct ReportRow {
  std::string method;
  uint64_t build_io = 0;  // update phases: data and index trees
  double build_s = 0;
  uint64_t join_io = 0;  // summed over every join of the schedule
  double join_s = 0;
  uint64_t rows = 0;     // rows of the last join
  std::string digest;    // 16 hex digits, last join
  double predicted_io = 0;
  std::vector<std::pair<std::string, double>> breakdown;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct ExperimentResult {
  std::vector<ReportRow> rows;
  workload::DatasetStats realized;
  uint64_t oracle_rows = 0;
  std::string oracle_digest;
};

// Applies the schedule to fresh trees for every index setup the selected
// methods need and runs every method at each join trigger. Each join's
// digest is checked against the in-memory oracle; a mismatch throws
// CorrectnessError naming both digests.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct Prediction {
  join::JoinMethod method;
  // Summed over the f joins, each on the data present at its trigger.
  cost::CostEstimate join;
  cost::CostEstimate build;
  double per_join_total = 0;  // build / f + join / f
};

// Pure: uses the configured targets, touches no storage.
std::vector<Prediction> predict(const ExperimentConfig& config);
// Same, on measured distribution properties.
std::vector<Prediction> predict(const ExperimentConfig& config, const workload::DatasetStats& stats);

std::string hex_digest(uint64_t value);

}  // namespace lsmjoin::bench
