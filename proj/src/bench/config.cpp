#include "lsmjoin/bench/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "lsmjoin/common/error.hpp"

namespace lsmjoin::bench {

using nlohmann::json;

namespace {

// Reads the keys present in `j` into the matching fields; anything else is
// an error so typos do not silently fall back to defaults.
class Reader {
 public:
  Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j.is_object()) throw ConfigError(where_ + ": expected an object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(where_ + "." + key + ": " + e.what());
    }
  }

  const json* sub(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!seen_.count(k)) throw ConfigError(where_ + ": unknown key '" + k + "'");
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

workload::WorkloadSpec workload_from(const json& j) {
  workload::WorkloadSpec w;
  Reader r(j, "workload");
  r.get("n_r", w.n_r);
  r.get("n_s", w.n_s);
  r.get("entry_size", w.entry_size);
  std::string dist = w.distribution == workload::Distribution::kZipf ? "zipf" : "uniform";
  r.get("distribution", dist);
  if (dist == "uniform") w.distribution = workload::Distribution::kUniform;
  else if (dist == "zipf") w.distribution = workload::Distribution::kZipf;
  else throw ConfigError("workload.distribution must be 'uniform' or 'zipf'");
  r.get("theta", w.theta);
  r.get("c_r", w.c_r);
  r.get("c_s", w.c_s);
  r.get("d_r", w.d_r);
  r.get("d_s", w.d_s);
  r.get("eps_r", w.eps_r);
  r.get("eps_s", w.eps_s);
  r.get("join_frequency", w.join_frequency);
  r.get("seed", w.seed);
  r.get("primary", w.primary);
  r.finish();
  return w;
}

json workload_to(const workload::WorkloadSpec& w) {
  return {{"n_r", w.n_r},
          {"n_s", w.n_s},
          {"entry_size", w.entry_size},
          {"distribution", w.distribution == workload::Distribution::kZipf ? "zipf" : "uniform"},
          {"theta", w.theta},
          {"c_r", w.c_r},
          {"c_s", w.c_s},
          {"d_r", w.d_r},
          {"d_s", w.d_s},
          {"eps_r", w.eps_r},
          {"eps_s", w.eps_s},
          {"join_frequency", w.join_frequency},
          {"seed", w.seed},
          {"primary", w.primary}};
}

}  // namespace

lsm::StorageConfig StorageSettings::storage(const std::filesystem::path& dir) const {
  lsm::StorageConfig c;
  c.block_size = block_size;
  c.write_buffer_bytes = write_buffer_bytes;
  c.size_ratio = size_ratio;
  c.bloom_bits_per_key = bloom_bits_per_key;
  c.data_dir = dir;
  return c;
}

void ExperimentConfig::validate() const {
  workload.validate();
  auto probe = storage.storage(temp_dir.empty() ? std::filesystem::temp_directory_path() : temp_dir);
  probe.validate();
  if (storage.memory_budget < 4ull * storage.block_size)
    throw ConfigError("memory_budget must hold at least four blocks");
  if (repetitions == 0) throw ConfigError("repetitions must be >= 1");
  if (r_csv.empty() != s_csv.empty()) throw ConfigError("r_csv and s_csv must be given together");
  selected_methods();
}

std::vector<join::JoinMethod> ExperimentConfig::selected_methods() const {
  std::vector<join::JoinMethod> out;
  for (const auto& sel : methods) {
    const bool expand = sel == "all" || sel == "standard";
    for (const auto& m : join::parse_method_list(sel)) {
      if (m.requires_primary_s() && !workload.primary) {
        if (expand) continue;
        throw ConfigError(m.id() + " needs S keyed by the join attribute; set workload.primary");
      }
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
  }
  if (out.empty()) throw ConfigError("no join methods selected");
  return out;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c;
  Reader r(j, "config");
  if (const json* w = r.sub("workload")) c.workload = workload_from(*w);
  if (const json* s = r.sub("storage")) {
    Reader st(*s, "storage");
    st.get("block_size", c.storage.block_size);
    st.get("write_buffer_bytes", c.storage.write_buffer_bytes);
    st.get("size_ratio", c.storage.size_ratio);
    st.get("bloom_bits_per_key", c.storage.bloom_bits_per_key);
    st.get("memory_budget", c.storage.memory_budget);
    st.finish();
  }
  if (const json* m = r.sub("methods")) {
    if (m->is_string()) c.methods = {m->get<std::string>()};
    else if (m->is_array()) c.methods = m->get<std::vector<std::string>>();
    else throw ConfigError("methods must be a string or an array of strings");
  }
  std::string out, rc, sc, tmp;
  r.get("output_dir", out);
  r.get("r_csv", rc);
  r.get("s_csv", sc);
  r.get("temp_dir", tmp);
  r.get("repetitions", c.repetitions);
  r.finish();
  c.output_dir = out;
  c.r_csv = rc;
  c.s_csv = sc;
  c.temp_dir = tmp;
  return c;
}

json ExperimentConfig::to_json() const {
  return {{"workload", workload_to(workload)},
          {"storage",
           {{"block_size", storage.block_size},
            {"write_buffer_bytes", storage.write_buffer_bytes},
            {"size_ratio", storage.size_ratio},
            {"bloom_bits_per_key", storage.bloom_bits_per_key},
            {"memory_budget", storage.memory_budget}}},
          {"methods", methods},
          {"output_dir", output_dir.string()},
          {"r_csv", r_csv.string()},
          {"s_csv", s_csv.string()},
          {"temp_dir", temp_dir.string()},
          {"repetitions", repetitions}};
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace lsmjoin::bench
