#include "lsmjoin/join/sort_merge_join.hpp"

#include <optional>

namespace lsmjoin::join {

namespace {

constexpr uint64_t kItemOverhead = 32;

bool is_live(SortedStream& s, index::IndexedTable* table) {
  return !s.needs_validation() || table->validate(s.pk(), s.attr());
}

// Joins one oversized attribute group: both groups go to disk and are
// crossed block-nested-loop style, one budget-sized left chunk at a time.
void spilled_group(const std::string& attr, SpillPtr left_group, SortedStream& right,
                   index::IndexedTable* right_table, uint64_t budget, SpillArea& area, RowCollector& out) {
  auto rw = area.writer("group");
  for (; right.valid() && right.attr() == attr; right.next()) {
    if (is_live(right, right_table)) rw.add(JoinRecord{attr, right.pk(), {}});
  }
  SpillPtr right_group = rw.finish();
  SpillReader left(left_group, area.stats());
  std::vector<std::string> chunk;
  while (left.valid()) {
    chunk.clear();
    uint64_t bytes = 0;
    for (; left.valid() && bytes < budget; left.next()) {
      chunk.push_back(left.record().pk);
      bytes += left.record().pk.size() + kItemOverhead;
    }
    for (SpillReader r(right_group, area.stats()); r.valid(); r.next()) {
      for (const auto& lp : chunk) out(JoinRow{attr, lp, r.record().pk});
    }
  }
}

}  // namespace

void merge_join(SortedStream& left, index::IndexedTable* left_table, SortedStream& right,
                index::IndexedTable* right_table, uint64_t budget, SpillArea& area, RowCollector& out) {
  std::vector<std::string> group;
  while (left.valid() && right.valid()) {
    if (left.attr() < right.attr()) {
      left.next();
      continue;
    }
    if (right.attr() < left.attr()) {
      right.next();
      continue;
    }
    const std::string attr = left.attr();
    group.clear();
    uint64_t bytes = 0;
    std::optional<SpillWriter> overflow;
    for (; left.valid() && left.attr() == attr; left.next()) {
      if (!is_live(left, left_table)) continue;
      if (overflow) {
        overflow->add(JoinRecord{attr, left.pk(), {}});
        continue;
      }
      group.push_back(left.pk());
      bytes += left.pk().size() + kItemOverhead;
      if (bytes > budget) {
        overflow.emplace(area.writer("group"));
        for (const auto& pk : group) overflow->add(JoinRecord{attr, pk, {}});
        group.clear();
      }
    }
    if (overflow) {
      spilled_group(attr, overflow->finish(), right, right_table, budget, area, out);
      continue;
    }
    for (; right.valid() && right.attr() == attr; right.next()) {
      if (group.empty() || !is_live(right, right_table)) continue;
      for (const auto& lp : group) out(JoinRow{attr, lp, right.pk()});
    }
  }
}

}  // namespace lsmjoin::join
