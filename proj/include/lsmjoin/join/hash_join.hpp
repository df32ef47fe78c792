#pragma once

#include <cstdint>
#include <string_view>

#include "lsmjoin/join/external_sort.hpp"
#include "lsmjoin/join/join_row.hpp"

namespace lsmjoin::join {

// h = h * 131 + c over the bytes, wrapping at 2^64.
constexpr uint64_t bkdr_hash(std::string_view bytes, uint64_t h = 0) {
  for (unsigned char c : bytes) h = h * 131 + c;
  return h;
}

// Smallest partition count keeping the smaller input within the budget.
uint64_t min_partitions(uint64_t smaller_bytes, uint64_t budget);

struct HashJoinStats {
  uint64_t partitions = 0;
  uint64_t repartitions = 0;
  uint64_t fallback_partitions = 0;
};

// Grace hash join: both inputs are partitioned to disk by
// bkdr_hash(attr) mod num_partitions, then each partition pair is joined by
// building an in-memory table on its smaller side. A partition whose build
// side exceeds the budget is repartitioned with a salted hash up to three
// times, and otherwise joined chunk by chunk.
HashJoinStats grace_hash_join(const RecordSource& left, const RecordSource& right, uint64_t num_partitions,
                              uint64_t budget, SpillArea& area, RowCollector& out);

}  // namespace lsmjoin::join
