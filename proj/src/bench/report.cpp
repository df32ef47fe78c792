#include "lsmjoin/bench/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "lsmjoin/common/error.hpp"

namespace lsmjoin::bench {

using nlohmann::json;

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out << text;
  if (!out.flush()) throw IoError("write failed: " + path.string());
}

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
  std::vector<double> rank(v.size());
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2 + 1;
    for (size_t k = i; k <= j; ++k) rank[order[k]] = avg;
    i = j + 1;
  }
  return rank;
}

}  // namespace

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : rows)
    out += r.method + "," + std::to_string(r.build_io) + "," + num(r.build_s) + "," + std::to_string(r.join_io) +
           "," + num(r.join_s) + "," + std::to_string(r.rows) + "," + r.digest + "," + num(r.predicted_io) + "\n";
  return out;
}

json report_json(const std::vector<ReportRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json breakdown = json::array();
    for (const auto& [term, units] : r.breakdown) breakdown.push_back({{"term", term}, {"units", units}});
    arr.push_back({{"method", r.method},
                   {"build_io", r.build_io},
                   {"build_s", r.build_s},
                   {"join_io", r.join_io},
                   {"join_s", r.join_s},
                   {"rows", r.rows},
                   {"digest", r.digest},
                   {"predicted_io", r.predicted_io},
                   {"breakdown", breakdown}});
  }
  return arr;
}

std::vector<ReportRow> parse_report_json(const json& j) {
  std::vector<ReportRow> out;
  try {
    for (const auto& o : j) {
      ReportRow r;
      r.method = o.at("method").get<std::string>();
      r.build_io = o.at("build_io").get<uint64_t>();
      r.build_s = o.at("build_s").get<double>();
      r.join_io = o.at("join_io").get<uint64_t>();
      r.join_s = o.at("join_s").get<double>();
      r.rows = o.at("rows").get<uint64_t>();
      r.digest = o.at("digest").get<std::string>();
      r.predicted_io = o.at("predicted_io").get<double>();
      if (o.contains("breakdown"))
        for (const auto& b : o.at("breakdown"))
          r.breakdown.emplace_back(b.at("term").get<std::string>(), b.at("units").get<double>());
      out.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw ParameterError(std::string("malformed report: ") + e.what());
  }
  return out;
}

std::vector<ReportRow> parse_report_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw ParameterError(path.string() + ": unexpected header");
  std::vector<ReportRow> out;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 8) throw ParameterError(path.string() + ":" + std::to_string(lineno) + ": expected 8 fields");
    try {
      ReportRow r;
      r.method = f[0];
      r.build_io = std::stoull(f[1]);
      r.build_s = std::stod(f[2]);
      r.join_io = std::stoull(f[3]);
      r.join_s = std::stod(f[4]);
      r.rows = std::stoull(f[5]);
      r.digest = f[6];
      r.predicted_io = std::stod(f[7]);
      out.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw ParameterError(path.string() + ":" + std::to_string(lineno) + ": bad number");
    }
  }
  return out;
}

void emit_report(const std::vector<ReportRow>& rows, ReportFormat format, const std::filesystem::path& path) {
  write_file(path, format == ReportFormat::kCsv ? report_csv(rows) : report_json(rows).dump(2) + "\n");
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw ParameterError("spearman: length mismatch");
  const size_t n = x.size();
  if (n < 2) return 0;
  const auto rx = average_ranks(x), ry = average_ranks(y);
  // Pearson on ranks, which stays exact with ties.
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0;
  return sxy / std::sqrt(sxx * syy);
}

Comparison compare(const std::vector<ReportRow>& report, const std::vector<Prediction>& predictions) {
  std::map<std::string, double> pred;
  for (const auto& p : predictions) pred[p.method.id()] = p.join.io_units;
  Comparison c;
  std::vector<double> measured, predicted;
  for (const auto& r : report) {
    auto it = pred.find(r.method);
    if (it == pred.end()) continue;
    Ratio q;
    q.method = r.method;
    q.measured = static_cast<double>(r.join_io);
    q.predicted = it->second;
    q.ratio = q.predicted > 0 ? q.measured / q.predicted : 0;
    measured.push_back(q.measured);
    predicted.push_back(q.predicted);
    c.ratios.push_back(std::move(q));
  }
  c.spearman_rho = spearman(predicted, measured);
  return c;
}

std::string predictions_csv(const std::vector<Prediction>& predictions) {
  std::string out = "method,predicted_io,build_io,per_join_total,breakdown\n";
  for (const auto& p : predictions) {
    std::string terms;
    for (const auto& [term, units] : p.join.breakdown) terms += (terms.empty() ? "" : ";") + term + "=" + num(units);
    out += p.method.id() + "," + num(p.join.io_units) + "," + num(p.build.io_units) + "," + num(p.per_join_total) +
           "," + terms + "\n";
  }
  return out;
}

std::string comparison_csv(const Comparison& c) {
  std::string out = "method,measured_io,predicted_io,ratio\n";
  for (const auto& r : c.ratios)
    out += r.method + "," + num(r.measured) + "," + num(r.predicted) + "," + num(r.ratio) + "\n";
  return out;
}

}  // namespace lsmjoin::bench
