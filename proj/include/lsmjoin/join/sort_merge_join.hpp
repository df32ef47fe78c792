#pragma once

#include "lsmjoin/index/indexed_table.hpp"
#include "lsmjoin/join/join_row.hpp"
#include "lsmjoin/join/sources.hpp"

namespace lsmjoin::join {

// Merges two (attr, pk)-ordered streams. The left attribute group is
// buffered (spilled when it exceeds `budget`) and crossed with the matching
// right group. Items of a stream that needs validation are checked against
// their table once, and only when the other side has the attribute.
void merge_join(SortedStream& left, index::IndexedTable* left_table, SortedStream& right,
                index::IndexedTable* right_table, uint64_t budget, SpillArea& area, RowCollector& out);

}  // namespace lsmjoin::join
