#pragma once

#include <cstdint>
#include <filesystem>

#include "lsmjoin/index/indexed_table.hpp"
#include "lsmjoin/join/join_method.hpp"
#include "lsmjoin/join/join_row.hpp"

namespace lsmjoin::join {

struct JoinOptions {
  // Bytes available for sort runs, merge buffers and hash partitions.
  uint64_t memory_budget = 16ull << 20;
  // Where spill files go; defaults to the system temp directory.
  std::filesystem::path temp_dir;
};

// Checks that `r` and `s` carry the indexes the method needs (ConfigError
// otherwise, before any I/O).
void check_tables(const JoinMethod& method, const index::IndexedTable& r, const index::IndexedTable& s);

// Runs one join of R (left/outer) with S (right/inner) and reports its rows,
// digest and I/O.
JoinResult run_join(const JoinMethod& method, index::IndexedTable& r, index::IndexedTable& s,
                    const JoinOptions& options, RowSink sink = nullptr);

}  // namespace lsmjoin::join
