#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lsmjoin/common/file.hpp"
#include "lsmjoin/lsm/block.hpp"
#include "lsmjoin/lsm/bloom.hpp"
#include "lsmjoin/lsm/entry.hpp"
#include "lsmjoin/lsm/io_stats.hpp"

namespace lsmjoin::lsm {

// Immutable sorted run. File layout (little-endian):
//   header  "LSMJ" | version u32 | entry_count u64 | block_size u32
//   body    logical blocks of packed records, zero-padded
//   footer  fence_count u64 | (offset u64, units u32, key_len u32, key)*
//           | max_key_len u32, max_key | data_bytes u64
//           | filter_len u64, filter bytes | footer_len u64
// The fence index and filter are loaded into memory and never charged I/O.
class Run {
 public:
  static constexpr uint32_t kFormatVersion = 1;
  static constexpr uint64_t kHeaderSize = 20;

  // Reads header and footer of an existing run file.
  static std::shared_ptr<Run> open(const std::filesystem::path& path, const FilterPolicy& policy);

  const std::filesystem::path& path() const { return path_; }
  uint64_t entry_count() const { return entry_count_; }
  // Sum of encoded record sizes (excludes block padding).
  uint64_t data_bytes() const { return data_bytes_; }
  uint64_t block_units() const;
  uint32_t block_size() const { return block_size_; }
  const std::string& min_key() const { return fences_.front().first_key; }
  const std::string& max_key() const { return max_key_; }
  const std::vector<BlockHandle>& fences() const { return fences_; }

  bool key_in_range(std::string_view key) const { return key >= min_key() && key <= max_key_; }
  bool may_contain(std::string_view key) const { return filter_->may_contain(key); }

  // Index of the last block whose first key is <= key; 0 when key < min_key.
  size_t block_for(std::string_view key) const;
  void read_block(size_t index, IoStats& stats, std::vector<Entry>& out) const;
  // Replaces `out` with the block's entries, reusing its storage.
  void load_block(size_t index, IoStats& stats, std::vector<Entry>& out) const;
  // Reads the single block that may hold `key` (no filter check).
  std::optional<Entry> find(std::string_view key, IoStats& stats) const;
  // Full decode for tests and tooling; not charged.
  std::vector<Entry> read_all_uncounted() const;

 private:
  friend class RunWriter;
  Run() = default;

  std::filesystem::path path_;
  File file_;
  uint64_t entry_count_ = 0;
  uint64_t data_bytes_ = 0;
  uint32_t block_size_ = 0;
  std::vector<BlockHandle> fences_;
  std::string max_key_;
  std::unique_ptr<KeyFilter> filter_;
};

// Streams sorted entries into a new run file.
class RunWriter {
 public:
  RunWriter(std::filesystem::path path, uint32_t block_size, std::shared_ptr<const FilterPolicy> policy,
            std::function<std::string_view(std::string_view)> prefix_extractor, IoStats& stats);

  // Entries must arrive in strictly ascending key order.
  void add(const Entry& e);
  // Returns nullptr (and removes the file) when no entry was added.
  std::shared_ptr<Run> finish();

 private:
  std::filesystem::path path_;
  uint32_t block_size_;
  std::shared_ptr<const FilterPolicy> policy_;
  std::function<std::string_view(std::string_view)> prefix_extractor_;
  File file_;
  std::unique_ptr<BlockWriter> blocks_;
  std::vector<std::string> filter_keys_;
  std::string last_key_;
  std::string last_prefix_;
};

}  // namespace lsmjoin::lsm
