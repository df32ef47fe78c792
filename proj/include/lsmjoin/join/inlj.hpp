#pragma once

#include "lsmjoin/index/indexed_table.hpp"
#include "lsmjoin/join/join_method.hpp"
#include "lsmjoin/join/join_row.hpp"

namespace lsmjoin::join {

// Indexed nested loop join with R as the outer table. The outer side is a
// scan of R's data tree (P, N, NS) or of R's index (PS, SS); each outer tuple
// probes S by primary key (P, PS), through S's index (NS, SS), or by a full
// scan of S (N).
void inlj(const JoinMethod& method, index::IndexedTable& r, index::IndexedTable& s, RowCollector& out);

}  // namespace lsmjoin::join
