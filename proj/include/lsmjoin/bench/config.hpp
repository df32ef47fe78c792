#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "lsmjoin/join/join_method.hpp"
#include "lsmjoin/lsm/storage_config.hpp"
#include "lsmjoin/workload/generator.hpp"

namespace lsmjoin::bench {

// Desk-scale defaults: the buffer is shrunk with N so the trees still have
// several levels.
struct StorageSettings {
  uint32_t block_size = 4096;
  uint64_t write_buffer_bytes = 64 << 10;
  uint32_t size_ratio = 5;
  double bloom_bits_per_key = 10;
  // Join working memory: sort runs, merge fan-in, hash partitions.
  uint64_t memory_budget = 1 << 20;

  lsm::StorageConfig storage(const std::filesystem::path& dir) const;
};

struct ExperimentConfig {
  workload::WorkloadSpec workload;
  StorageSettings storage;
  // Method ids, or "all" / "standard".
  std::vector<std::string> methods{"all"};
  std::filesystem::path output_dir;
  // When both are set the tables are loaded from CSV instead of generated.
  std::filesystem::path r_csv;
  std::filesystem::path s_csv;
  std::filesystem::path temp_dir;
  uint32_t repetitions = 1;

  // Throws ConfigError / ParameterError.
  void validate() const;
  // Expands the selectors, keeping only methods the workload supports when
  // "all"/"standard" is used. An explicit method that needs S keyed by the
  // join attribute on a non-primary workload is a ConfigError.
  std::vector<join::JoinMethod> selected_methods() const;

  // Unknown keys are rejected.
  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  static ExperimentConfig load(const std::filesystem::path& path);
};

}  // namespace lsmjoin::bench
