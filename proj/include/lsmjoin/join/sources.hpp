#pragma once

#include <memory>
#include <string>

#include "lsmjoin/index/indexed_table.hpp"
#include "lsmjoin/join/external_sort.hpp"
#include "lsmjoin/join/spill.hpp"

namespace lsmjoin::join {

// (attr, pk) items in ascending (attr, pk) order, the input of the merge phase.
class SortedStream {
 public:
  virtual ~SortedStream() = default;
  virtual bool valid() const = 0;
  virtual const std::string& attr() const = 0;
  virtual const std::string& pk() const = 0;
  virtual void next() = 0;
  // Items may be stale (Validation index) and must be checked against the
  // owning data table before use.
  virtual bool needs_validation() const { return false; }
};

// Every live record of a table's data tree, in primary-key order.
RecordSource data_records(index::IndexedTable& table);

// A sorted spill file.
std::unique_ptr<SortedStream> spill_stream(SpillPtr file, lsm::IoStats& stats);
// The secondary index of `table`, already ordered by attribute.
std::unique_ptr<SortedStream> index_stream(index::IndexedTable& table);
// The data tree of a table whose primary key is the join attribute.
std::unique_ptr<SortedStream> primary_stream(index::IndexedTable& table);

}  // namespace lsmjoin::join
