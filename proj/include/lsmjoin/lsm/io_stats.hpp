#pragma once

#include <cstdint>
#include <string>

namespace lsmjoin::lsm {

// Logical I/O events. A "block" is one block_size unit of a run or spill file;
// fence indexes and filters live in memory and are never charged.
struct IoStats {
  uint64_t blocks_read = 0;
  uint64_t blocks_written = 0;
  uint64_t seeks = 0;
  uint64_t bloom_probes = 0;
  uint64_t bloom_negative = 0;
  uint64_t bloom_false_positive = 0;
  uint64_t point_lookups = 0;

  // Block transfers in either direction; the unit of every cost formula.
  uint64_t total_io() const { return blocks_read + blocks_written; }

  IoStats& operator+=(const IoStats& o) {
    blocks_read += o.blocks_read;
    blocks_written += o.blocks_written;
    seeks += o.seeks;
    bloom_probes += o.bloom_probes;
    bloom_negative += o.bloom_negative;
    bloom_false_positive += o.bloom_false_positive;
    point_lookups += o.point_lookups;
    return *this;
  }

  friend IoStats operator+(IoStats a, const IoStats& b) { return a += b; }

  // Delta between two snapshots of the same monotone counters.
  friend IoStats operator-(const IoStats& a, const IoStats& b) {
    IoStats d;
    d.blocks_read = a.blocks_read - b.blocks_read;
    d.blocks_written = a.blocks_written - b.blocks_written;
    d.seeks = a.seeks - b.seeks;
    d.bloom_probes = a.bloom_probes - b.bloom_probes;
    d.bloom_negative = a.bloom_negative - b.bloom_negative;
    d.bloom_false_positive = a.bloom_false_positive - b.bloom_false_positive;
    d.point_lookups = a.point_lookups - b.point_lookups;
    return d;
  }

  friend bool operator==(const IoStats&, const IoStats&) = default;

  std::string to_string() const;
};

}  // namespace lsmjoin::lsm
