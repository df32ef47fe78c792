#include "lsmjoin/join/executor.hpp"

#include <algorithm>

#include "lsmjoin/common/error.hpp"
#include "lsmjoin/common/file.hpp"
#include "lsmjoin/join/external_sort.hpp"
#include "lsmjoin/join/hash_join.hpp"
#include "lsmjoin/join/inlj.hpp"
#include "lsmjoin/join/sort_merge_join.hpp"
#include "lsmjoin/join/sources.hpp"

namespace lsmjoin::join {

std::string JoinRow::canonical() const {
  std::string out;
  out.reserve(attr.size() + left_pk.size() + right_pk.size() + 2);
  out.append(attr);
  out.push_back('\0');
  out.append(left_pk);
  out.push_back('\0');
  out.append(right_pk);
  return out;
}

void check_tables(const JoinMethod& method, const index::IndexedTable& r, const index::IndexedTable& s) {
  method.check();
  auto require = [&](const std::optional<index::IndexConfig>& want, const index::IndexedTable& t, const char* side) {
    if (!want) return;
    if (!t.config() || !(*t.config() == *want)) {
      throw ConfigError(method.id() + " needs table " + side + " indexed as " + want->to_string());
    }
  };
  require(method.r_index(), r, "R");
  require(method.s_index(), s, "S");
}

JoinResult run_join(const JoinMethod& method, index::IndexedTable& r, index::IndexedTable& s,
                    const JoinOptions& options, RowSink sink) {
  check_tables(method, r, s);
  if (options.memory_budget == 0) throw ConfigError("memory budget must be > 0");
  TempDir tmp("lsmjoin-join", options.temp_dir.empty() ? std::filesystem::temp_directory_path() : options.temp_dir);

  JoinResult result;
  lsm::IoStats spill;
  const uint32_t block_size = r.data().config().block_size;
  SpillArea area(tmp.path(), block_size, spill);
  RowCollector out(result, std::move(sink));
  const lsm::IoStats r0 = r.io_stats();
  const lsm::IoStats s0 = s.io_stats();

  switch (method.algorithm) {
    case Algorithm::kINLJ:
      inlj(method, r, s, out);
      break;
    case Algorithm::kSJ: {
      auto sorted = [&](index::IndexedTable& t) {
        auto runs = external_sort(data_records(t), options.memory_budget, area);
        result.sort_runs += runs.size();
        uint64_t passes = 0;
        auto merged = kway_merge(std::move(runs), merge_fan_in(options.memory_budget, block_size), area, &passes);
        result.merge_passes += passes;
        return spill_stream(std::move(merged), spill);
      };
      const bool r_indexed = method.r_index().has_value();
      const bool s_indexed = method.s_index().has_value();
      auto left = r_indexed ? index_stream(r) : sorted(r);
      std::unique_ptr<SortedStream> right;
      if (method.requires_primary_s()) {
        right = primary_stream(s);
      } else {
        right = s_indexed ? index_stream(s) : sorted(s);
      }
      merge_join(*left, &r, *right, &s, options.memory_budget, area, out);
      break;
    }
    case Algorithm::kHJ: {
      // In-memory size estimates; 10% headroom keeps hash imbalance from
      // forcing a repartition pass.
      const uint64_t smaller = std::min(r.data().total_bytes(), s.data().total_bytes());
      const uint64_t parts = min_partitions(smaller + smaller / 10, options.memory_budget);
      auto stats = grace_hash_join(data_records(r), data_records(s), parts, options.memory_budget, area, out);
      result.partitions = stats.partitions;
      result.fallback_partitions = stats.fallback_partitions;
      break;
    }
  }
  result.spill_io = spill;
  result.io = (r.io_stats() - r0) + (s.io_stats() - s0) + spill;
  return result;
}

}  // namespace lsmjoin::join
