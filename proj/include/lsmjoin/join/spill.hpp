#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "lsmjoin/common/file.hpp"
#include "lsmjoin/lsm/block.hpp"
#include "lsmjoin/lsm/io_stats.hpp"

namespace lsmjoin::join {

// A tuple in flight through sort or partition files. Encoded with the run
// record layout as key = attr, value = pk 0x00 payload, so it occupies as many
// bytes as the data record it came from.
struct JoinRecord {
  std::string attr;
  std::string pk;
  std::string payload;

  size_t encoded_size() const;
  friend bool operator==(const JoinRecord&, const JoinRecord&) = default;
};

// Sort order of every spill stream: (attr, pk).
inline bool record_less(const JoinRecord& a, const JoinRecord& b) {
  return a.attr != b.attr ? a.attr < b.attr : a.pk < b.pk;
}

// Finished spill file; deleted when the last owner goes away.
class SpillFile {
 public:
  SpillFile(std::filesystem::path path, uint32_t block_size, uint64_t end_offset, uint64_t records, uint64_t bytes);
  ~SpillFile();
  SpillFile(const SpillFile&) = delete;
  SpillFile& operator=(const SpillFile&) = delete;

  const std::filesystem::path& path() const { return path_; }
  uint32_t block_size() const { return block_size_; }
  uint64_t end_offset() const { return end_offset_; }
  uint64_t record_count() const { return records_; }
  uint64_t record_bytes() const { return bytes_; }
  uint64_t block_units() const { return end_offset_ / block_size_; }

 private:
  std::filesystem::path path_;
  uint32_t block_size_;
  uint64_t end_offset_;
  uint64_t records_;
  uint64_t bytes_;
};

using SpillPtr = std::shared_ptr<const SpillFile>;

class SpillWriter {
 public:
  SpillWriter(std::filesystem::path path, uint32_t block_size, lsm::IoStats& stats);
  void add(const JoinRecord& r);
  SpillPtr finish();
  uint64_t record_bytes() const { return blocks_->record_bytes(); }

 private:
  std::filesystem::path path_;
  uint32_t block_size_;
  std::unique_ptr<File> file_;  // stable address for blocks_
  std::unique_ptr<lsm::BlockWriter> blocks_;
  std::string value_;
};

// Sequential reader; every block unit consumed is charged as one read.
class SpillReader {
 public:
  SpillReader(SpillPtr file, lsm::IoStats& stats);
  bool valid() const { return pos_ < block_.size(); }
  const JoinRecord& record() const { return block_[pos_]; }
  void next();

 private:
  void load();

  SpillPtr spill_;
  File file_;
  lsm::IoStats& stats_;
  uint64_t offset_ = 0;
  std::vector<JoinRecord> block_;
  size_t pos_ = 0;
};

// Hands out unique file names inside one directory.
class SpillArea {
 public:
  SpillArea(const std::filesystem::path& dir, uint32_t block_size, lsm::IoStats& stats);
  SpillWriter writer(const std::string& tag);
  uint32_t block_size() const { return block_size_; }
  lsm::IoStats& stats() { return stats_; }

 private:
  std::filesystem::path dir_;
  uint32_t block_size_;
  lsm::IoStats& stats_;
  uint64_t next_ = 0;
};

}  // namespace lsmjoin::join
