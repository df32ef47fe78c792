#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lsmjoin/bench/experiment.hpp"

namespace lsmjoin::bench {

enum class ReportFormat { kCsv, kJson };

inline constexpr const char* kCsvHeader = "method,build_io,build_s,join_io,join_s,rows,digest,predicted_io";

void emit_report(const std::vector<ReportRow>& rows, ReportFormat format, const std::filesystem::path& path);
std::string report_csv(const std::vector<ReportRow>& rows);
nlohmann::json report_json(const std::vector<ReportRow>& rows);
std::vector<ReportRow> parse_report_json(const nlohmann::json& j);
// Breakdown is not part of the CSV and comes back empty.
std::vector<ReportRow> parse_report_csv(const std::filesystem::path& path);

// Spearman correlation with average ranks for ties; 0 when either side is
// constant or there are fewer than two points.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

struct Ratio {
  std::string method;
  double measured = 0;
  double predicted = 0;
  double ratio = 0;  // measured / predicted, 0 when nothing was predicted
};

struct Comparison {
  double spearman_rho = 0;
  std::vector<Ratio> ratios;
};

// Pairs methods present on both sides and correlates measured join I/O with
// predicted join I/O.
Comparison compare(const std::vector<ReportRow>& report, const std::vector<Prediction>& predictions);

std::string predictions_csv(const std::vector<Prediction>& predictions);
std::string comparison_csv(const Comparison& comparison);

}  // namespace lsmjoin::bench
