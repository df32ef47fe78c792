#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lsmjoin/join/spill.hpp"

namespace lsmjoin::join {

// Pulls the next record into `out`; returns false at end of input.
using RecordSource = std::function<bool(JoinRecord& out)>;

// Cuts the input into runs of at most `budget` encoded bytes, sorts each by
// (attr, pk) and writes it out. Every input record is written exactly once.
std::vector<SpillPtr> external_sort(const RecordSource& source, uint64_t budget, SpillArea& area);

// Merges sorted runs into one, at most `k_max` inputs per pass (ties go to
// the lower run index). A single run is copied so that the output is always a
// fresh file. `passes` receives the number of merge passes.
SpillPtr kway_merge(std::vector<SpillPtr> runs, size_t k_max, SpillArea& area, uint64_t* passes = nullptr);

// k_max for a memory budget: one input buffer per run plus one output buffer,
// with double buffering, i.e. budget / (2 B).
size_t merge_fan_in(uint64_t budget, uint32_t block_size);

}  // namespace lsmjoin::join
