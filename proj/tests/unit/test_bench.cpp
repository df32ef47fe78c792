#include <gtest/gtest.h>

#include <fstream>

#include "lsmjoin/bench/config.hpp"
#include "lsmjoin/bench/experiment.hpp"
#include "lsmjoin/bench/report.hpp"
#include "lsmjoin/common/error.hpp"
#include "lsmjoin/common/file.hpp"
#include "lsmjoin/common/hash.hpp"
#include "lsmjoin/workload/csv.hpp"

using namespace lsmjoin;
using namespace lsmjoin::bench;

namespace {

ExperimentConfig small_config(uint64_t n, std::vector<std::string> methods) {
  ExperimentConfig c;
  c.workload.n_r = c.workload.n_s = n;
  c.storage.write_buffer_bytes = 16 << 10;
  c.storage.memory_budget = 128 << 10;
  c.methods = std::move(methods);
  return c;
}

const ReportRow& row(const ExperimentResult& r, const std::string& id) {
  for (const auto& x : r.rows)
    if (x.method == id) return x;
  throw std::runtime_error("missing " + id);
}

}  // namespace

TEST(Config, JsonRoundTripAndStrictKeys) {
  auto c = small_config(500, {"HJ-N", "SJ-PS:S-Comp-C"});
  c.workload.distribution = workload::Distribution::kZipf;
  c.workload.theta = 0.7;
  c.workload.primary = false;
  c.output_dir = "/tmp/x";
  const auto back = ExperimentConfig::from_json(c.to_json());
  EXPECT_EQ(back.to_json(), c.to_json());

  auto j = c.to_json();
  j["workload"]["n_rr"] = 3;
  EXPECT_THROW(ExperimentConfig::from_json(j), ConfigError);
  j = c.to_json();
  j["methods"] = "all";
  EXPECT_EQ(ExperimentConfig::from_json(j).methods, std::vector<std::string>{"all"});
  j["workload"]["distribution"] = "lognormal";
  EXPECT_THROW(ExperimentConfig::from_json(j), ConfigError);
}

TEST(Config, MethodSelection) {
  auto c = small_config(100, {"all"});
  EXPECT_EQ(c.selected_methods().size(), 78u);
  c.workload.primary = false;
  c.workload.d_s = 2;
  // INLJ-P, SJ-P, HJ-P and the 24 PS variants need S keyed by the attribute.
  EXPECT_EQ(c.selected_methods().size(), 51u);
  c.methods = {"SJ-P"};
  EXPECT_THROW(c.selected_methods(), ConfigError);
}

TEST(Experiment, RunningExampleOrdering) {
  auto c = small_config(10000, {"INLJ-P", "SJ-P", "HJ-P"});
  c.workload.eps_r = c.workload.eps_s = 0.01;
  const auto res = run_experiment(c);
  ASSERT_EQ(res.rows.size(), 3u);
  for (const auto& r : res.rows) {
    EXPECT_EQ(r.digest, res.oracle_digest);
    EXPECT_EQ(r.rows, res.oracle_rows);
  }
  EXPECT_LT(row(res, "INLJ-P").join_io, row(res, "SJ-P").join_io);
  EXPECT_LT(row(res, "INLJ-P").join_io, row(res, "HJ-P").join_io);
}

TEST(Experiment, JoinFrequency) {
  auto c = small_config(20000, {"SJ-N", "HJ-N", "SJ-SS:S-Comp"});
  c.workload.primary = false;
  const auto one = run_experiment(c);
  c.workload.join_frequency = 4;
  const auto four = run_experiment(c);
  for (const auto& r1 : one.rows) {
    const auto& r4 = row(four, r1.method);
    EXPECT_NEAR(static_cast<double>(r4.build_io) / static_cast<double>(r1.build_io), 1.0, 0.1) << r1.method;
  }
  // Joins run on 1/4, 2/4, 3/4 and all of the data: 2.5 full joins.
  for (const char* id : {"SJ-N", "HJ-N"}) {
    const double ratio = static_cast<double>(row(four, id).join_io) / static_cast<double>(row(one, id).join_io);
    EXPECT_NEAR(ratio, 2.5, 0.25) << id;
  }
}

TEST(Experiment, EmptyWorkload) {
  auto c = small_config(0, {"INLJ-P", "SJ-N", "HJ-N", "SJ-SS:V-Lazy", "INLJ-NS:S-Eager-C"});
  const auto res = run_experiment(c);
  ASSERT_EQ(res.rows.size(), 5u);
  for (const auto& r : res.rows) {
    EXPECT_EQ(r.join_io, 0u) << r.method;
    EXPECT_EQ(r.rows, 0u);
    EXPECT_EQ(r.digest, hex_digest(MultisetDigest().value()));
  }
}

TEST(Experiment, Reproducible) {
  auto c = small_config(3000, {"SJ-PS:V-Lazy", "INLJ-NS:S-Comp", "HJ-P"});
  c.workload.c_r = 2;
  c.workload.join_frequency = 3;
  c.repetitions = 2;
  const auto a = run_experiment(c), b = run_experiment(c);
  for (size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].join_io, b.rows[i].join_io);
    EXPECT_EQ(a.rows[i].build_io, b.rows[i].build_io);
    EXPECT_EQ(a.rows[i].digest, b.rows[i].digest);
  }
}

TEST(Experiment, CsvInput) {
  TempDir dir("bench");
  auto w = workload::generate(small_config(800, {}).workload);
  workload::dump_csv(w.r, dir.path() / "r.csv");
  workload::dump_csv(w.s, dir.path() / "s.csv");
  auto c = small_config(800, {"HJ-P", "SJ-PS:S-Eager"});
  c.r_csv = dir.path() / "r.csv";
  c.s_csv = dir.path() / "s.csv";
  const auto res = run_experiment(c);
  EXPECT_EQ(res.oracle_rows, w.oracle.rows);
  EXPECT_EQ(res.oracle_digest, hex_digest(w.oracle.digest.value()));
  // S keyed by attribute is checked on load.
  workload::dump_csv(w.r, dir.path() / "s.csv");
  EXPECT_THROW(run_experiment(c), ConfigError);
}

TEST(Predict, DelegatesToCostModel) {
  auto c = small_config(10000, {"all"});
  const auto preds = predict(c);
  EXPECT_EQ(preds.size(), 78u);
  cost::CostParams r;
  r.n = r.updates = 10000;
  r.e = 64;
  r.block = 4096;
  r.buffer = 16 << 10;
  r.size_ratio = 5;
  r.bloom_bits = 10;
  for (const auto& p : preds) {
    EXPECT_DOUBLE_EQ(p.join.io_units, cost::join_cost(p.method, r, r).io_units) << p.method.id();
    EXPECT_DOUBLE_EQ(p.build.io_units, cost::build_cost(p.method, r, r).io_units);
    EXPECT_DOUBLE_EQ(p.per_join_total, p.build.io_units + p.join.io_units);
  }
  c.workload.join_frequency = 4;
  for (const auto& p : predict(c)) {
    const double f = 4;
    EXPECT_DOUBLE_EQ(p.per_join_total, (p.build.io_units + p.join.io_units) / f);
  }
}

TEST(Compare, Spearman) {
  EXPECT_DOUBLE_EQ(spearman({1, 2, 3, 4}, {10, 20, 30, 40}), 1.0);
  EXPECT_DOUBLE_EQ(spearman({1, 2, 3, 4}, {40, 30, 20, 10}), -1.0);
  // Ties take average ranks: x ranks {1.5,1.5,3}.
  EXPECT_NEAR(spearman({1, 1, 2}, {1, 2, 3}), 0.8660254, 1e-6);
  EXPECT_EQ(spearman({1, 1}, {1, 2}), 0);
}

TEST(Compare, RatioTable) {
  auto c = small_config(100, {"HJ-N", "SJ-N"});
  c.workload.primary = false;
  const auto preds = predict(c);
  std::vector<ReportRow> rows;
  for (const auto& p : preds) {
    ReportRow r;
    r.method = p.method.id();
    r.join_io = static_cast<uint64_t>(2 * p.join.io_units);
    rows.push_back(r);
  }
  const auto cmp = compare(rows, preds);
  EXPECT_DOUBLE_EQ(cmp.spearman_rho, 1.0);
  ASSERT_EQ(cmp.ratios.size(), 2u);
  for (const auto& q : cmp.ratios) EXPECT_NEAR(q.ratio, 2.0, 0.1);
}

TEST(Report, Formats) {
  TempDir dir("report");
  emit_report({}, ReportFormat::kCsv, dir.path() / "empty.csv");
  std::ifstream in(dir.path() / "empty.csv");
  std::string all((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(all, std::string(kCsvHeader) + "\n");

  ReportRow a{"SJ-PS:S-Comp-C", 10, 0.5, 20, 0.25, 7, "00000000000000ff", 19.5, {{"scan_S", 1.5}, {"scan_R'", 18}}};
  ReportRow b{"HJ-P", 0, 0, 0, 0, 0, "0", 0, {}};
  const std::vector<ReportRow> rows{a, b};
  EXPECT_EQ(parse_report_json(report_json(rows)), rows);
  emit_report(rows, ReportFormat::kJson, dir.path() / "r.json");
  std::ifstream jin(dir.path() / "r.json");
  EXPECT_EQ(parse_report_json(nlohmann::json::parse(jin)), rows);

  emit_report(rows, ReportFormat::kCsv, dir.path() / "r.csv");
  auto back = parse_report_csv(dir.path() / "r.csv");
  ASSERT_EQ(back.size(), 2u);
  a.breakdown.clear();
  EXPECT_EQ(back[0], a);
  EXPECT_EQ(report_csv(rows).substr(0, report_csv(rows).find('\n')), kCsvHeader);
}
