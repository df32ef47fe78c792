#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "lsmjoin/common/hash.hpp"
#include "lsmjoin/lsm/io_stats.hpp"

namespace lsmjoin::join {

struct JoinRow {
  std::string attr;
  std::string left_pk;
  std::string right_pk;

  // attr 0x00 left 0x00 right; the digest input.
  std::string canonical() const;
  friend bool operator==(const JoinRow&, const JoinRow&) = default;
  friend auto operator<=>(const JoinRow&, const JoinRow&) = default;
};

using RowSink = std::function<void(const JoinRow&)>;

struct JoinResult {
  uint64_t rows = 0;
  MultisetDigest digest;
  // Every block transfer of the join: both tables' trees plus spill files.
  lsm::IoStats io;
  // The spill-file share of `io`.
  lsm::IoStats spill_io;
  uint64_t sort_runs = 0;
  uint64_t merge_passes = 0;
  uint64_t partitions = 0;
  uint64_t fallback_partitions = 0;
};

// Counts rows, folds the digest and forwards to an optional sink.
class RowCollector {
 public:
  explicit RowCollector(JoinResult& result, RowSink sink = nullptr) : result_(result), sink_(std::move(sink)) {}
  void operator()(const JoinRow& row) {
    ++result_.rows;
    result_.digest.add(row.canonical());
    if (sink_) sink_(row);
  }

 private:
  JoinResult& result_;
  RowSink sink_;
};

}  // namespace lsmjoin::join
