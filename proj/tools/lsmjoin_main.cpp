// lsmjoin generate|run|predict|compare
//
// Exit codes: 0 success, 1 error, 2 usage, 3 join result mismatch.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "lsmjoin/bench/config.hpp"
#include "lsmjoin/bench/experiment.hpp"
#include "lsmjoin/bench/report.hpp"
#include "lsmjoin/common/error.hpp"
#include "lsmjoin/workload/csv.hpp"

namespace fs = std::filesystem;
using namespace lsmjoin;
using namespace lsmjoin::bench;

namespace {

struct Options {
  std::string config;
  std::string out;
  std::string methods;
  uint64_t seed = 0;
  bool seed_set = false;
};

ExperimentConfig resolve(const Options& o, bool need_out) {
  ExperimentConfig c = o.config.empty() ? ExperimentConfig{} : ExperimentConfig::load(o.config);
  if (!o.out.empty()) c.output_dir = o.out;
  if (!o.methods.empty()) c.methods = {o.methods};
  if (o.seed_set) c.workload.seed = o.seed;
  if (need_out) {
    if (c.output_dir.empty()) throw ConfigError("no output directory: pass --out or set output_dir");
    fs::create_directories(c.output_dir);
  }
  c.validate();
  return c;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text) || !out.flush()) throw IoError("cannot write " + path.string());
}

nlohmann::json stats_json(const workload::DatasetStats& s) {
  return {{"n_r", s.n_r},     {"n_s", s.n_s},     {"u_r", s.u_r},     {"u_s", s.u_s},
          {"c_r", s.c_r},     {"c_s", s.c_s},     {"d_r", s.d_r},     {"d_s", s.d_s},
          {"eps_r", s.eps_r}, {"eps_s", s.eps_s}, {"theta_r", s.theta_r}, {"theta_s", s.theta_s}};
}

int cmd_generate(const Options& o) {
  const auto c = resolve(o, true);
  const auto w = workload::generate(c.workload);
  workload::dump_csv(w.r, c.output_dir / "r.csv");
  workload::dump_csv(w.s, c.output_dir / "s.csv");
  nlohmann::json j = {{"config", c.to_json()},
                      {"realized", stats_json(w.realized)},
                      {"oracle_rows", w.oracle.rows},
                      {"oracle_digest", hex_digest(w.oracle.digest.value())}};
  write_text(c.output_dir / "stats.json", j.dump(2) + "\n");
  std::printf("wrote %zu R and %zu S updates to %s (join rows %llu)\n", w.r.size(), w.s.size(),
              c.output_dir.c_str(), static_cast<unsigned long long>(w.oracle.rows));
  return 0;
}

void print_comparison(const Comparison& cmp) {
  std::printf("spearman_rho %.4f over %zu methods\n", cmp.spearman_rho, cmp.ratios.size());
}

int cmd_run(const Options& o) {
  const auto c = resolve(o, true);
  const auto res = run_experiment(c);
  emit_report(res.rows, ReportFormat::kCsv, c.output_dir / "report.csv");
  emit_report(res.rows, ReportFormat::kJson, c.output_dir / "report.json");
  const auto preds = predict(c, res.realized);
  write_text(c.output_dir / "predictions.csv", predictions_csv(preds));
  const auto cmp = compare(res.rows, preds);
  write_text(c.output_dir / "comparison.csv", comparison_csv(cmp));

  std::printf("%-22s %12s %12s %12s %10s\n", "method", "build_io", "join_io", "predicted", "rows");
  for (const auto& r : res.rows)
    std::printf("%-22s %12llu %12llu %12.0f %10llu\n", r.method.c_str(), static_cast<unsigned long long>(r.build_io),
                static_cast<unsigned long long>(r.join_io), r.predicted_io, static_cast<unsigned long long>(r.rows));
  std::printf("all digests match the oracle (%s)\n", res.oracle_digest.c_str());
  print_comparison(cmp);
  return 0;
}

int cmd_predict(const Options& o) {
  const auto c = resolve(o, false);
  const auto preds = predict(c);
  const std::string csv = predictions_csv(preds);
  if (c.output_dir.empty()) {
    std::cout << csv;
  } else {
    fs::create_directories(c.output_dir);
    write_text(c.output_dir / "predictions.csv", csv);
    std::printf("wrote %zu predictions to %s\n", preds.size(), (c.output_dir / "predictions.csv").c_str());
  }
  return 0;
}

int cmd_compare(const Options& o) {
  const auto c = resolve(o, true);
  const auto report = parse_report_csv(c.output_dir / "report.csv");
  // Predicted I/O recorded by `run` used the realized distribution; prefer it.
  std::vector<Prediction> preds = predict(c);
  for (auto& p : preds)
    for (const auto& r : report)
      if (r.method == p.method.id()) p.join.io_units = r.predicted_io;
  const auto cmp = compare(report, preds);
  write_text(c.output_dir / "comparison.csv", comparison_csv(cmp));
  for (const auto& q : cmp.ratios)
    std::printf("%-22s measured %12.0f predicted %12.0f ratio %8.3f\n", q.method.c_str(), q.measured, q.predicted,
                q.ratio);
  print_comparison(cmp);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joins over LSM-trees: workload generation, benchmark runs and cost predictions"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "experiment config (JSON)")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--methods", o.methods, "comma-separated method ids, 'all' or 'standard'");
    sub->add_option_function<uint64_t>(
        "--seed", [&](uint64_t s) {
          o.seed = s;
          o.seed_set = true;
        }, "workload seed");
  };
  auto* gen = app.add_subcommand("generate", "write R/S update streams and realized statistics");
  auto* run = app.add_subcommand("run", "build tables, run scheduled joins, write reports");
  auto* pred = app.add_subcommand("predict", "cost-model predictions, no storage touched");
  auto* cmp = app.add_subcommand("compare", "rank-correlate a run's report with predictions");
  for (auto* s : {gen, run, pred, cmp}) add_common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    if (gen->parsed()) return cmd_generate(o);
    if (run->parsed()) return cmd_run(o);
    if (pred->parsed()) return cmd_predict(o);
    return cmd_compare(o);
  } catch (const CorrectnessError& e) {
    std::fprintf(stderr, "lsmjoin: result mismatch: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "lsmjoin: %s\n", e.what());
    return 1;
  }
}
