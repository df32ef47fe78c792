#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lsmjoin/common/file.hpp"
#include "lsmjoin/lsm/entry.hpp"
#include "lsmjoin/lsm/io_stats.hpp"

namespace lsmjoin::lsm {

// One logical block: `units` consecutive block_size units starting at
// `offset`. Records never straddle blocks; a record larger than block_size
// gets a logical block of its own spanning ceil(size / block_size) units.
struct BlockHandle {
  uint64_t offset = 0;
  uint32_t units = 1;
  std::string first_key;
};

// Packs encoded records into blocks appended to `file`, padding each block
// tail with zero bytes (a zero key length marks the end of a block).
class BlockWriter {
 public:
  BlockWriter(File& file, uint64_t start_offset, uint32_t block_size, IoStats& stats, bool keep_handles);

  void add(std::string_view key, std::string_view value, uint64_t seq, EntryKind kind);
  void add(const Entry& e) { add(e.key, e.value, e.seq, e.kind); }
  void finish();

  const std::vector<BlockHandle>& handles() const { return handles_; }
  uint64_t end_offset() const { return offset_; }
  uint64_t record_count() const { return records_; }
  uint64_t record_bytes() const { return record_bytes_; }
  uint64_t units_written() const { return units_; }

 private:
  void emit_block(std::string& bytes, std::string_view first_key);

  File& file_;
  uint64_t offset_;
  uint32_t block_size_;
  IoStats& stats_;
  bool keep_handles_;
  std::string pending_;
  std::string pending_first_key_;
  std::vector<BlockHandle> handles_;
  uint64_t records_ = 0;
  uint64_t record_bytes_ = 0;
  uint64_t units_ = 0;
};

// Decodes every record of a logical block. Throws CorruptionError.
void decode_block(std::string_view bytes, std::vector<Entry>& out);
// Same, but replaces the contents of `out`, reusing its elements' storage.
void decode_block_into(std::string_view bytes, std::vector<Entry>& out);

// Reads the logical block at `offset` when its unit count is unknown (spill
// files): one unit, plus more if the first record is oversized. Charges
// blocks_read per unit. Returns the bytes; `units` receives the span.
std::string read_block_sequential(const File& file, uint64_t offset, uint32_t block_size, IoStats& stats,
                                  uint32_t& units);

}  // namespace lsmjoin::lsm
