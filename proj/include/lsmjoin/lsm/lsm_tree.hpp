#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lsmjoin/lsm/entry.hpp"
#include "lsmjoin/lsm/io_stats.hpp"
#include "lsmjoin/lsm/run.hpp"
#include "lsmjoin/lsm/storage_config.hpp"

namespace lsmjoin::lsm {

// A value fragment found for a key, tagged with where it lives: level 0 is the
// write buffer, levels 1..L are on disk.
struct Fragment {
  std::string value;
  uint64_t seq = 0;
  int level = 0;

  friend bool operator==(const Fragment&, const Fragment&) = default;
};

// Sequential cursor over sorted entries (write buffer snapshot or a run).
class EntryCursor {
 public:
  virtual ~EntryCursor() = default;
  virtual bool valid() const = 0;
  virtual const Entry& entry() const = 0;
  virtual void next() = 0;
};

class RunCursor final : public EntryCursor {
 public:
  RunCursor(std::shared_ptr<const Run> run, IoStats* stats);

  void seek_to_first();
  void seek(std::string_view lower_bound);

  bool valid() const override { return pos_ < block_.size(); }
  const Entry& entry() const override { return block_[pos_]; }
  void next() override;

 private:
  void load(size_t block_index);

  std::shared_ptr<const Run> run_;
  IoStats* stats_;
  size_t block_index_ = 0;
  std::vector<Entry> block_;
  size_t pos_ = 0;
};

// Merged ascending view over the write buffer and every run. The newest
// version of each key wins and tombstoned keys are hidden. Under
// posting-list-merge policy every live fragment of a key is yielded, newest
// first. The tree must not be modified while an iterator is in use.
class TreeIterator {
 public:
  bool valid() const { return has_current_; }
  const Entry& entry() const { return newest_ != nullptr ? newest_->cursor->entry() : current_; }
  // Source level of the current entry (0 = write buffer).
  int level() const { return current_level_; }
  void next();

 private:
  friend class LsmTree;
  struct Source {
    std::unique_ptr<EntryCursor> cursor;
    int level;
  };

  TreeIterator(std::vector<Source> sources, bool yield_fragments);
  // Positions on the next visible entry; false at the end.
  bool refill();
  void skip_newest();

  std::vector<Source> sources_;
  bool yield_fragments_;
  std::vector<std::pair<Entry, int>> pending_;
  size_t pending_pos_ = 0;
  Entry current_;
  // Source holding the current entry when only newest versions are yielded.
  Source* newest_ = nullptr;
  int current_level_ = 0;
  bool has_current_ = false;
};

// Single-writer leveled LSM-tree with synchronous compaction. On-disk level i
// (1-based) holds at most one run of capacity write_buffer_bytes * T^i; the
// write buffer is level 0. Every block transfer is counted in io_stats().
class LsmTree {
 public:
  LsmTree(StorageConfig config, const std::string& name);
  ~LsmTree();
  LsmTree(const LsmTree&) = delete;
  LsmTree& operator=(const LsmTree&) = delete;

  void put(std::string_view key, std::string_view value);
  void remove(std::string_view key);
  std::optional<std::string> get(std::string_view key);
  // Every live fragment of `key`, newest first, one per source; stops at the
  // first tombstone.
  std::vector<Fragment> collect_versions(std::string_view key);

  // Positions on the first key >= lower_bound. With `prefix` (and a
  // configured prefix extractor) runs whose filter excludes the prefix are
  // skipped without I/O.
  TreeIterator seek(std::string_view lower_bound, std::optional<std::string_view> prefix = std::nullopt);
  TreeIterator full_scan() { return seek(std::string_view{}); }

  void flush();
  // Merges level `level` into level + 1 (1-based levels).
  void compact(int level);
  // Flushes and merges everything into a single bottom run, dropping
  // tombstones.
  void compact_to_bottom();

  const IoStats& io_stats() const { return stats_; }
  void reset_io_stats() { stats_ = IoStats{}; }

  const StorageConfig& config() const { return config_; }
  // Deepest non-empty on-disk level (0 when everything is in the buffer).
  int level_count() const;
  uint64_t level_capacity(int level) const;
  uint64_t level_bytes(int level) const;
  std::shared_ptr<const Run> level_run(int level) const;
  uint64_t buffer_bytes() const { return buffer_bytes_; }
  size_t buffer_entries() const { return buffer_.size(); }
  // Encoded bytes currently held in the buffer plus all runs.
  uint64_t total_bytes() const;
  // Decoded contents of one level for inspection; not charged.
  std::vector<Entry> dump_level(int level) const;

 private:
  std::filesystem::path next_run_path();
  void cascade();
  bool is_bottom(int level) const;
  std::shared_ptr<Run> merge_runs(EntryCursor& newer, EntryCursor* older, bool bottom);
  void install(int level, std::shared_ptr<Run> run);
  void write_buffer(std::string_view key, std::string_view value, EntryKind kind);

  StorageConfig config_;
  std::shared_ptr<const FilterPolicy> filter_policy_;
  std::filesystem::path dir_;
  std::map<std::string, Entry, std::less<>> buffer_;
  uint64_t buffer_bytes_ = 0;
  std::vector<std::shared_ptr<Run>> levels_;  // levels_[i] is level i + 1
  uint64_t next_seq_ = 1;
  uint64_t next_file_ = 1;
  IoStats stats_;
};

}  // namespace lsmjoin::lsm
