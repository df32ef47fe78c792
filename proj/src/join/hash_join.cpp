#include "lsmjoin/join/hash_join.hpp"

#include <unordered_map>

#include "lsmjoin/common/hash.hpp"

namespace lsmjoin::join {

namespace {

constexpr int kMaxRepartitions = 3;

uint64_t partition_of(std::string_view attr, uint64_t salt, uint64_t partitions) {
  const uint64_t h = bkdr_hash(attr);
  return (salt == 0 ? h : mix64(h ^ (salt * 0x9e3779b97f4a7c15ULL))) % partitions;
}

class GraceJoin {
 public:
  GraceJoin(uint64_t budget, SpillArea& area, RowCollector& out, HashJoinStats& stats)
      : budget_(budget), area_(area), out_(out), stats_(stats) {}

  std::vector<SpillPtr> partition(const RecordSource& source, uint64_t partitions, uint64_t salt) {
    std::vector<SpillWriter> writers;
    writers.reserve(partitions);
    for (uint64_t i = 0; i < partitions; ++i) writers.push_back(area_.writer("part"));
    JoinRecord rec;
    while (source(rec)) writers[partition_of(rec.attr, salt, partitions)].add(rec);
    std::vector<SpillPtr> files;
    for (auto& w : writers) files.push_back(w.finish());
    return files;
  }

  void join_pair(const SpillPtr& left, const SpillPtr& right, int depth) {
    if (left->record_count() == 0 || right->record_count() == 0) return;
    const bool build_left = left->record_bytes() <= right->record_bytes();
    const SpillPtr& build = build_left ? left : right;
    const SpillPtr& probe = build_left ? right : left;
    if (build->record_bytes() <= budget_) {
      hash_pair(build, probe, build_left);
      return;
    }
    if (depth < kMaxRepartitions) {
      ++stats_.repartitions;
      const uint64_t parts = std::max<uint64_t>(2, min_partitions(build->record_bytes(), budget_));
      const uint64_t salt = static_cast<uint64_t>(depth) + 1;
      auto lp = partition(reader_source(left), parts, salt);
      auto rp = partition(reader_source(right), parts, salt);
      for (uint64_t i = 0; i < parts; ++i) join_pair(lp[i], rp[i], depth + 1);
      return;
    }
    ++stats_.fallback_partitions;
    chunked_pair(build, probe, build_left);
  }

 private:
  RecordSource reader_source(const SpillPtr& file) {
    auto reader = std::make_shared<SpillReader>(file, area_.stats());
    return [reader](JoinRecord& out) {
      if (!reader->valid()) return false;
      out = reader->record();
      reader->next();
      return true;
    };
  }

  void emit(const std::string& attr, const std::string& build_pk, const std::string& probe_pk, bool build_left) {
    if (build_left) {
      out_(JoinRow{attr, build_pk, probe_pk});
    } else {
      out_(JoinRow{attr, probe_pk, build_pk});
    }
  }

  void hash_pair(const SpillPtr& build, const SpillPtr& probe, bool build_left) {
    std::unordered_multimap<std::string, std::string> table;
    table.reserve(build->record_count());
    for (SpillReader r(build, area_.stats()); r.valid(); r.next()) table.emplace(r.record().attr, r.record().pk);
    for (SpillReader r(probe, area_.stats()); r.valid(); r.next()) {
      auto [lo, hi] = table.equal_range(r.record().attr);
      for (auto it = lo; it != hi; ++it) emit(r.record().attr, it->second, r.record().pk, build_left);
    }
  }

  // Last resort when repartitioning cannot split a partition (a single hot
  // attribute): one budget-sized build chunk at a time against the whole probe.
  void chunked_pair(const SpillPtr& build, const SpillPtr& probe, bool build_left) {
    SpillReader b(build, area_.stats());
    while (b.valid()) {
      std::unordered_multimap<std::string, std::string> table;
      uint64_t bytes = 0;
      for (; b.valid() && bytes < budget_; b.next()) {
        bytes += b.record().encoded_size();
        table.emplace(b.record().attr, b.record().pk);
      }
      for (SpillReader r(probe, area_.stats()); r.valid(); r.next()) {
        auto [lo, hi] = table.equal_range(r.record().attr);
        for (auto it = lo; it != hi; ++it) emit(r.record().attr, it->second, r.record().pk, build_left);
      }
    }
  }

  uint64_t budget_;
  SpillArea& area_;
  RowCollector& out_;
  HashJoinStats& stats_;
};

}  // namespace

uint64_t min_partitions(uint64_t smaller_bytes, uint64_t budget) {
  return std::max<uint64_t>(1, (smaller_bytes + budget - 1) / budget);
}

HashJoinStats grace_hash_join(const RecordSource& left, const RecordSource& right, uint64_t num_partitions,
                              uint64_t budget, SpillArea& area, RowCollector& out) {
  HashJoinStats stats;
  stats.partitions = std::max<uint64_t>(1, num_partitions);
  GraceJoin join(budget, area, out, stats);
  auto lp = join.partition(left, stats.partitions, 0);
  auto rp = join.partition(right, stats.partitions, 0);
  for (uint64_t i = 0; i < stats.partitions; ++i) join.join_pair(lp[i], rp[i], 0);
  return stats;
}

}  // namespace lsmjoin::join
