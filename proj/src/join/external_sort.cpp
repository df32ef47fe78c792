#include "lsmjoin/join/external_sort.hpp"

#include <algorithm>
#include <queue>

#include "lsmjoin/common/error.hpp"

namespace lsmjoin::join {

size_t merge_fan_in(uint64_t budget, uint32_t block_size) {
  return static_cast<size_t>(std::max<uint64_t>(2, budget / (2ull * block_size)));
}

std::vector<SpillPtr> external_sort(const RecordSource& source, uint64_t budget, SpillArea& area) {
  if (budget == 0) throw ConfigError("memory budget must be > 0");
  std::vector<SpillPtr> runs;
  std::vector<JoinRecord> buffer;
  uint64_t bytes = 0;
  auto spill = [&] {
    std::sort(buffer.begin(), buffer.end(), record_less);
    auto w = area.writer("sort");
    for (const auto& r : buffer) w.add(r);
    runs.push_back(w.finish());
    buffer.clear();
    bytes = 0;
  };
  JoinRecord rec;
  while (source(rec)) {
    const uint64_t size = rec.encoded_size();
    if (!buffer.empty() && bytes + size > budget) spill();
    bytes += size;
    buffer.push_back(std::move(rec));
    rec = JoinRecord{};
  }
  if (!buffer.empty()) spill();
  return runs;
}

namespace {

SpillPtr merge_once(const std::vector<SpillPtr>& inputs, SpillArea& area) {
  std::vector<std::unique_ptr<SpillReader>> readers;
  for (const auto& f : inputs) readers.push_back(std::make_unique<SpillReader>(f, area.stats()));
  auto greater = [&](size_t a, size_t b) {
    const auto& ra = readers[a]->record();
    const auto& rb = readers[b]->record();
    if (record_less(rb, ra)) return true;
    if (record_less(ra, rb)) return false;
    return a > b;
  };
  std::priority_queue<size_t, std::vector<size_t>, decltype(greater)> heap(greater);
  for (size_t i = 0; i < readers.size(); ++i) {
    if (readers[i]->valid()) heap.push(i);
  }
  auto w = area.writer("merge");
  while (!heap.empty()) {
    const size_t i = heap.top();
    heap.pop();
    w.add(readers[i]->record());
    readers[i]->next();
    if (readers[i]->valid()) heap.push(i);
  }
  return w.finish();
}

}  // namespace

SpillPtr kway_merge(std::vector<SpillPtr> runs, size_t k_max, SpillArea& area, uint64_t* passes) {
  if (k_max < 2) throw ConfigError("merge fan-in must be >= 2");
  uint64_t n = 0;
  if (runs.empty()) {
    if (passes) *passes = 0;
    return area.writer("merge").finish();
  }
  do {
    std::vector<SpillPtr> next;
    for (size_t i = 0; i < runs.size(); i += k_max) {
      const size_t end = std::min(runs.size(), i + k_max);
      next.push_back(merge_once(std::vector<SpillPtr>(runs.begin() + i, runs.begin() + end), area));
    }
    runs = std::move(next);
    ++n;
  } while (runs.size() > 1);
  if (passes) *passes = n;
  return runs.front();
}

}  // namespace lsmjoin::join
