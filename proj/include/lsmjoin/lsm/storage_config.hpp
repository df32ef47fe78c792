#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace lsmjoin::lsm {

class FilterPolicy;

enum class MergePolicy { kPlain, kPostingListMerge };

// Combines same-key fragments under MergePolicy::kPostingListMerge. merge()
// must be associative: merge(a, merge(b, c)) == merge(merge(a, b), c).
class MergeOperator {
 public:
  virtual ~MergeOperator() = default;
  virtual std::string merge(std::string_view newer, std::string_view older) const = 0;
  // Called when a value is written into the bottom level, where nothing older
  // exists. Returning nullopt drops the entry.
  virtual std::optional<std::string> finalize_bottom(std::string_view value) const {
    return std::string(value);
  }
};

struct StorageConfig {
  uint32_t block_size = 4096;
  uint64_t write_buffer_bytes = 16ull << 20;
  uint32_t size_ratio = 5;
  double bloom_bits_per_key = 10.0;
  std::filesystem::path data_dir;
  MergePolicy merge_policy = MergePolicy::kPlain;

  // Required when merge_policy is kPostingListMerge.
  std::shared_ptr<const MergeOperator> merge_operator;
  // Null means a Bloom filter with bloom_bits_per_key.
  std::shared_ptr<const FilterPolicy> filter_policy;
  // When set, every run's filter also holds the extracted prefix of each key,
  // and seek() with a prefix skips runs whose filter rules the prefix out.
  std::function<std::string_view(std::string_view)> prefix_extractor;

  // Throws ConfigError when an invariant is violated.
  void validate() const;
};

}  // namespace lsmjoin::lsm
