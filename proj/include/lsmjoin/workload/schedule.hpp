#pragma once

#include <cstddef>
#include <vector>

#include "lsmjoin/workload/generator.hpp"

namespace lsmjoin::workload {

// Half-open update range applied before one join.
struct Phase {
  size_t begin = 0;
  size_t end = 0;
};

// f equal batches with the remainder in the last one, each followed by a
// join. Throws ParameterError for f == 0 or f > size (except one empty batch
// for an empty stream).
std::vector<Phase> schedule(size_t stream_size, size_t f);

// Merges the R and S streams proportionally so every batch carries both
// tables' updates in the same ratio; the order within each table is kept.
UpdateStream interleave(const UpdateStream& r, const UpdateStream& s);

}  // namespace lsmjoin::workload
