#include "lsmjoin/bench/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "lsmjoin/common/error.hpp"
#include "lsmjoin/common/file.hpp"
#include "lsmjoin/join/executor.hpp"
#include "lsmjoin/workload/csv.hpp"
#include "lsmjoin/workload/schedule.hpp"

namespace lsmjoin::bench {

using workload::Table;
using workload::UpdateStream;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Expected {
  uint64_t rows = 0;
  MultisetDigest digest;
};

// Join result after each phase, computed in memory by replaying the stream.
std::vector<Expected> expected_per_phase(const UpdateStream& stream, const std::vector<workload::Phase>& phases) {
  std::unordered_map<std::string, std::string> r_final, s_final;
  std::unordered_map<std::string, std::unordered_set<std::string>> s_by_attr;
  std::vector<Expected> out;
  std::string canon;
  for (const auto& ph : phases) {
    for (size_t i = ph.begin; i < ph.end; ++i) {
      const auto& u = stream[i];
      if (u.table == Table::kR) {
        r_final[u.pk] = u.attr;
        continue;
      }
      auto [it, fresh] = s_final.try_emplace(u.pk, u.attr);
      if (!fresh) {
        s_by_attr[it->second].erase(u.pk);
        it->second = u.attr;
      }
      s_by_attr[u.attr].insert(u.pk);
    }
    Expected e;
    for (const auto& [pk, attr] : r_final) {
      auto it = s_by_attr.find(attr);
      if (it == s_by_attr.end()) continue;
      for (const auto& spk : it->second) {
        canon.assign(attr).push_back('\0');
        canon.append(pk).push_back('\0');
        canon.append(spk);
        e.digest.add(canon);
        ++e.rows;
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::string setup_key(const join::JoinMethod& m) {
  auto name = [](const std::optional<index::IndexConfig>& c) { return c ? c->to_string() : std::string("-"); };
  return name(m.r_index()) + "|" + name(m.s_index());
}

cost::CostParams base_params(const ExperimentConfig& cfg) {
  cost::CostParams p;
  p.e = cfg.workload.entry_size;
  p.block = cfg.storage.block_size;
  p.buffer = static_cast<double>(cfg.storage.write_buffer_bytes);
  p.size_ratio = cfg.storage.size_ratio;
  p.bloom_bits = cfg.storage.bloom_bits_per_key;
  if (cfg.workload.distribution == workload::Distribution::kZipf) p.skew = cfg.workload.theta;
  return p;
}

std::vector<Prediction> predict_with(const ExperimentConfig& cfg, cost::CostParams r, cost::CostParams s) {
  const uint64_t total = cfg.workload.n_r + cfg.workload.n_s;
  const auto phases = workload::schedule(total, cfg.workload.join_frequency);
  const double f = static_cast<double>(phases.size());
  std::vector<Prediction> out;
  for (const auto& m : cfg.selected_methods()) {
    Prediction p;
    p.method = m;
    // Join k sees the fraction of the stream applied so far.
    std::map<std::string, size_t> slot;
    for (const auto& ph : phases) {
      const double frac = total ? static_cast<double>(ph.end) / static_cast<double>(total) : 0.0;
      cost::CostParams rk = r, sk = s;
      for (auto* t : {&rk, &sk}) {
        t->n *= frac;
        t->updates *= frac;
      }
      for (const auto& [term, units] : cost::join_cost(m, rk, sk).breakdown) {
        auto [it, fresh] = slot.try_emplace(term, p.join.breakdown.size());
        if (fresh) p.join.breakdown.emplace_back(term, 0.0);
        p.join.breakdown[it->second].second += units;
        p.join.io_units += units;
      }
    }
    p.build = cost::build_cost(m, r, s);
    p.per_join_total = (p.build.io_units + p.join.io_units) / f;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

std::string hex_digest(uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::vector<Prediction> predict(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto& w = cfg.workload;
  cost::CostParams r = base_params(cfg), s = r;
  r.updates = static_cast<double>(w.n_r);
  r.n = r.updates / w.c_r;
  r.eps = w.eps_r;
  r.d = w.d_r;
  s.updates = static_cast<double>(w.n_s);
  s.n = s.updates / w.c_s;
  s.eps = w.eps_s;
  s.d = w.primary ? 1 : w.d_s;
  return predict_with(cfg, r, s);
}

std::vector<Prediction> predict(const ExperimentConfig& cfg, const workload::DatasetStats& st) {
  cfg.validate();
  cost::CostParams r = base_params(cfg), s = r;
  r.n = static_cast<double>(st.u_r);
  r.updates = static_cast<double>(st.n_r);
  r.eps = st.eps_r;
  r.d = std::max(1.0, st.d_r);
  s.n = static_cast<double>(st.u_s);
  s.updates = static_cast<double>(st.n_s);
  s.eps = st.eps_s;
  s.d = std::max(1.0, st.d_s);
  return predict_with(cfg, r, s);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto methods = cfg.selected_methods();

  ExperimentResult result;
  UpdateStream r, s;
  if (!cfg.r_csv.empty()) {
    r = workload::load_csv(cfg.r_csv, Table::kR);
    s = workload::load_csv(cfg.s_csv, Table::kS);
    if (cfg.workload.primary)
      for (const auto& u : s)
        if (u.pk != u.attr) throw ConfigError("workload.primary is set but S row " + u.pk + " has attr " + u.attr);
    result.realized = workload::measure_stats(r, s);
  } else {
    auto w = workload::generate(cfg.workload);
    r = std::move(w.r);
    s = std::move(w.s);
    result.realized = w.realized;
  }

  const UpdateStream stream = workload::interleave(r, s);
  const auto phases = workload::schedule(stream.size(), cfg.workload.join_frequency);
  const auto expected = expected_per_phase(stream, phases);
  result.oracle_rows = expected.back().rows;
  result.oracle_digest = hex_digest(expected.back().digest.value());

  std::map<std::string, cost::CostEstimate> predicted;
  for (auto& p : predict(cfg, result.realized)) predicted.emplace(p.method.id(), std::move(p.join));

  // Methods sharing an index setup share one build.
  std::vector<std::pair<std::string, std::vector<join::JoinMethod>>> groups;
  for (const auto& m : methods) {
    const std::string key = setup_key(m);
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == key; });
    if (it == groups.end()) groups.push_back({key, {m}});
    else it->second.push_back(m);
  }

  std::map<std::string, ReportRow> rows;
  const auto base = cfg.temp_dir.empty() ? std::filesystem::temp_directory_path() : cfg.temp_dir;
  for (uint32_t rep = 0; rep < cfg.repetitions; ++rep) {
    for (const auto& [key, group] : groups) {
      TempDir dir("lsmjoin-exp", base);
      const auto storage = cfg.storage.storage(dir.path());
      index::IndexedTable rt(storage, group.front().r_index(), "R");
      index::IndexedTable st(storage, group.front().s_index(), "S");
      join::JoinOptions opts;
      opts.memory_budget = cfg.storage.memory_budget;
      opts.temp_dir = dir.path();

      std::map<std::string, ReportRow> local;
      for (const auto& m : group) local[m.id()].method = m.id();
      uint64_t build_io = 0;
      double build_s = 0;
      for (size_t k = 0; k < phases.size(); ++k) {
        rt.reset_io_stats();
        st.reset_io_stats();
        auto t0 = Clock::now();
        for (size_t i = phases[k].begin; i < phases[k].end; ++i) {
          const auto& u = stream[i];
          (u.table == Table::kR ? rt : st).apply_update(u.pk, u.attr, u.payload);
        }
        build_s += seconds_since(t0);
        build_io += rt.io_stats().total_io() + st.io_stats().total_io();

        for (const auto& m : group) {
          ReportRow& row = local[m.id()];
          t0 = Clock::now();
          const auto res = join::run_join(m, rt, st, opts);
          row.join_s += seconds_since(t0);
          row.join_io += res.io.total_io();
          if (res.digest != expected[k].digest || res.rows != expected[k].rows)
            throw CorrectnessError(m.id() + ": join " + std::to_string(k + 1) + " of " +
                                   std::to_string(phases.size()) + " produced " + std::to_string(res.rows) +
                                   " rows, digest " + hex_digest(res.digest.value()) + "; expected " +
                                   std::to_string(expected[k].rows) + " rows, digest " +
                                   hex_digest(expected[k].digest.value()));
          row.rows = res.rows;
          row.digest = hex_digest(res.digest.value());
        }
      }

      for (auto& [id, row] : local) {
        row.build_io = build_io;
        row.build_s = build_s;
        const auto& pred = predicted.at(id);
        row.predicted_io = pred.io_units;
        row.breakdown = pred.breakdown;
        auto [it, fresh] = rows.try_emplace(id, row);
        if (fresh) continue;
        // Logical I/O is deterministic; only wall-clock is averaged.
        if (it->second.join_io != row.join_io || it->second.build_io != row.build_io)
          throw CorrectnessError(id + ": I/O counters differ between repetitions");
        it->second.build_s += row.build_s;
        it->second.join_s += row.join_s;
      }
    }
  }

  for (const auto& m : methods) {
    ReportRow row = rows.at(m.id());
    row.build_s /= cfg.repetitions;
    row.join_s /= cfg.repetitions;
    result.rows.push_back(std::move(row));
  }
  return result;
}

}  // namespace lsmjoin::bench
