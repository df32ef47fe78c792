#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "lsmjoin/common/error.hpp"
#include "lsmjoin/common/file.hpp"
#include "lsmjoin/index/indexed_table.hpp"

using namespace lsmjoin;
using namespace lsmjoin::index;

namespace {

lsm::StorageConfig storage(const TempDir& dir, uint64_t m = 1 << 20) {
  lsm::StorageConfig c;
  c.block_size = 512;
  c.write_buffer_bytes = m;
  c.size_ratio = 3;
  c.data_dir = dir.path();
  return c;
}

std::set<std::string> pks(const std::vector<Candidate>& cs) {
  std::set<std::string> out;
  for (const auto& c : cs) out.insert(c.pk);
  return out;
}

IndexConfig cfg(IndexKind k, Strategy s, Coverage c = Coverage::kNonCovering) { return IndexConfig{k, s, c}; }

}  // namespace

TEST(IndexConfig, NamesRoundTripForAllTwelve) {
  auto all = IndexConfig::all();
  ASSERT_EQ(all.size(), 12u);
  std::set<std::string> names;
  for (const auto& c : all) {
    names.insert(c.to_string());
    EXPECT_EQ(IndexConfig::parse(c.to_string()), c);
  }
  EXPECT_EQ(names.size(), 12u);
  EXPECT_EQ(cfg(IndexKind::kComposite, Strategy::kSynchronous, Coverage::kCovering).to_string(), "S-Comp-C");
  EXPECT_EQ(cfg(IndexKind::kLazy, Strategy::kValidation).to_string(), "V-Lazy");
  EXPECT_THROW(IndexConfig::parse("X-Eager"), ConfigError);
}

TEST(PostingList, EmptyListIsTwoBytes) {
  PostingList empty;
  auto bytes = encode_posting(empty);
  EXPECT_EQ(bytes.size(), 2u);
  EXPECT_EQ(decode_posting(bytes), empty);
}

TEST(PostingList, RoundTrips) {
  PostingList pl;
  pl.adds = {{"p1", ""}, {"p3", ""}};
  EXPECT_EQ(decode_posting(encode_posting(pl)), pl);
  PostingList mixed;
  mixed.adds = {{"p2", ""}};
  mixed.removes = {"p1"};
  EXPECT_EQ(decode_posting(encode_posting(mixed)), mixed);
  PostingList cov;
  cov.covering = true;
  cov.adds = {{"a", "payload-a"}, {"b", ""}};
  EXPECT_EQ(decode_posting(encode_posting(cov)), cov);
}

TEST(PostingList, FuzzRoundTripAndCanonicalEncoding) {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 2000; ++iter) {
    PostingList pl;
    pl.covering = rng() % 2;
    const int na = rng() % 6, nr = rng() % 4;
    for (int i = 0; i < na; ++i) {
      pl.adds[std::to_string(rng() % 50)] = pl.covering ? std::string(rng() % 20, 'x') : "";
    }
    for (int i = 0; i < nr; ++i) {
      std::string k = std::to_string(rng() % 50);
      if (!pl.adds.count(k)) pl.removes.insert(k);
    }
    if (pl.adds.empty()) pl.covering = false;
    auto bytes = encode_posting(pl);
    ASSERT_EQ(decode_posting(bytes), pl);
    ASSERT_EQ(encode_posting(decode_posting(bytes)), bytes);
  }
}

TEST(PostingList, RejectsCorruptBytes) {
  PostingList pl;
  pl.adds = {{"p1", ""}, {"p2", ""}};
  auto bytes = encode_posting(pl);
  EXPECT_THROW(decode_posting(bytes.substr(0, bytes.size() - 2)), CorruptionError);
  EXPECT_THROW(decode_posting(bytes + "junk"), CorruptionError);
  EXPECT_THROW(decode_posting(""), CorruptionError);
}

TEST(PostingList, ComposeAppliesRemovesAndNewestPayload) {
  PostingList older, newer;
  older.covering = newer.covering = true;
  older.adds = {{"p1", "old1"}, {"p2", "old2"}};
  newer.adds = {{"p2", "new2"}, {"p3", "new3"}};
  newer.removes = {"p1", "p9"};
  auto out = compose(newer, older);
  EXPECT_EQ(out.adds, (std::map<std::string, std::string, std::less<>>{{"p2", "new2"}, {"p3", "new3"}}));
  EXPECT_EQ(out.removes, (std::set<std::string, std::less<>>{"p1", "p9"}));
  // A later re-add cancels an earlier remove.
  PostingList readd;
  readd.adds = {{"p1", "again"}};
  auto again = compose(readd, out);
  EXPECT_TRUE(again.adds.count("p1"));
  EXPECT_FALSE(again.removes.count("p1"));
}

TEST(PostingList, MergeIsAssociative) {
  std::mt19937_64 rng(11);
  auto random_fragment = [&] {
    PostingList pl;
    for (int i = 0, n = rng() % 4; i < n; ++i) pl.adds[std::to_string(rng() % 8)] = "";
    for (int i = 0, n = rng() % 3; i < n; ++i) {
      auto k = std::to_string(rng() % 8);
      if (!pl.adds.count(k)) pl.removes.insert(k);
    }
    return pl;
  };
  for (int iter = 0; iter < 3000; ++iter) {
    auto a = random_fragment(), b = random_fragment(), c = random_fragment();
    ASSERT_EQ(compose(a, compose(b, c)), compose(compose(a, b), c));
  }
}

TEST(PostingList, BottomFinalizationDropsRemovesAndEmptyLists) {
  PostingMergeOperator op;
  PostingList only_removes;
  only_removes.removes = {"p1"};
  EXPECT_FALSE(op.finalize_bottom(encode_posting(only_removes)).has_value());
  PostingList mixed;
  mixed.adds = {{"p2", ""}};
  mixed.removes = {"p1"};
  auto fin = op.finalize_bottom(encode_posting(mixed));
  ASSERT_TRUE(fin.has_value());
  EXPECT_TRUE(decode_posting(*fin).removes.empty());
}

TEST(CompositeKey, SplitsAndGroups) {
  auto k = composite_key("nA", "p1");
  auto [attr, pk] = split_composite(k);
  EXPECT_EQ(attr, "nA");
  EXPECT_EQ(pk, "p1");
  EXPECT_LT(composite_key("a", "zzz"), composite_key("ab", "0"));
  EXPECT_THROW(split_composite("noseparator"), CorruptionError);
}

TEST(IndexedTable, EagerAppendsToPostingList) {
  TempDir dir;
  IndexedTable t(storage(dir), cfg(IndexKind::kEager, Strategy::kSynchronous), "t");
  t.apply_update("p1", "n1", "x");
  t.apply_update("p3", "n1", "y");
  EXPECT_EQ(pks(t.index_lookup("n1")), (std::set<std::string>{"p1", "p3"}));
  auto raw = t.index_tree()->get("n1");
  ASSERT_TRUE(raw);
  EXPECT_EQ(decode_posting(*raw).adds.size(), 2u);
}

TEST(IndexedTable, CompositeValidationKeepsStaleEntries) {
  TempDir dir;
  IndexedTable t(storage(dir), cfg(IndexKind::kComposite, Strategy::kValidation), "t");
  t.apply_update("p1", "nA", "x");
  t.apply_update("p1", "nB", "x");
  std::set<std::string> keys;
  for (auto it = t.index_tree()->full_scan(); it.valid(); it.next()) keys.insert(it.entry().key);
  EXPECT_EQ(keys, (std::set<std::string>{composite_key("nA", "p1"), composite_key("nB", "p1")}));
  EXPECT_EQ(t.get_record("p1")->attr, "nB");
  EXPECT_TRUE(t.resolved_lookup("nA").empty());
  EXPECT_EQ(pks(t.resolved_lookup("nB")), (std::set<std::string>{"p1"}));
}

TEST(IndexedTable, CompositeSynchronousRemovesOldMapping) {
  TempDir dir;
  IndexedTable t(storage(dir), cfg(IndexKind::kComposite, Strategy::kSynchronous), "t");
  t.apply_update("p1", "nA", "x");
  t.apply_update("p1", "nB", "x");
  std::set<std::string> keys;
  for (auto it = t.index_tree()->full_scan(); it.valid(); it.next()) keys.insert(it.entry().key);
  EXPECT_EQ(keys, (std::set<std::string>{composite_key("nB", "p1")}));
}

TEST(IndexedTable, EmptyEagerLookupProbesFiltersOnly) {
  TempDir dir;
  IndexedTable t(storage(dir), cfg(IndexKind::kEager, Strategy::kSynchronous), "t");
  for (int i = 0; i < 200; ++i) t.apply_update("p" + std::to_string(i), "n" + std::to_string(i % 20), "x");
  t.index_tree()->flush();
  t.reset_io_stats();
  EXPECT_TRUE(t.index_lookup("absent").empty());
  EXPECT_GE(t.index_tree()->io_stats().bloom_negative, 1u);
  EXPECT_EQ(t.data().io_stats().point_lookups, 0u);
}

TEST(IndexedTable, LazyLookupMergesFragmentsAcrossLevels) {
  TempDir dir;
  IndexedTable t(storage(dir), cfg(IndexKind::kLazy, Strategy::kValidation), "t");
  t.apply_update("p2", "n", "x");
  t.index_tree()->flush();
  t.index_tree()->compact(1);  // {+p2} on level 2
  t.apply_update("p1", "n", "x");
  t.apply_update("p3", "n", "x");
  t.index_tree()->flush();  // {+p1,+p3} on level 1
  EXPECT_EQ(t.index_tree()->collect_versions("n").size(), 2u);
  EXPECT_EQ(pks(t.index_lookup("n")), (std::set<std::string>{"p1", "p2", "p3"}));
}

TEST(IndexedTable, LazySynchronousRemoveFragmentsHideOldMappings) {
  TempDir dir;
  IndexedTable t(storage(dir), cfg(IndexKind::kLazy, Strategy::kSynchronous), "t");
  t.apply_update("p1", "nA", "x");
  t.apply_update("p2", "nA", "x");
  t.index_tree()->flush();
  t.index_tree()->compact(1);
  const auto reads_before = t.index_tree()->io_stats().blocks_read;
  t.apply_update("p1", "nB", "x");
  EXPECT_EQ(t.index_tree()->io_stats().blocks_read, reads_before);  // write-only index update
  EXPECT_EQ(pks(t.index_lookup("nA")), (std::set<std::string>{"p2"}));
  EXPECT_EQ(pks(t.index_lookup("nB")), (std::set<std::string>{"p1"}));
  t.index_tree()->compact_to_bottom();
  EXPECT_EQ(pks(t.index_lookup("nA")), (std::set<std::string>{"p2"}));
}

TEST(IndexedTable, CompositePrefixLookup) {
  TempDir dir;
  IndexedTable t(storage(dir), cfg(IndexKind::kComposite, Strategy::kSynchronous), "t");
  t.apply_update("p1", "nA", "x");
  t.apply_update("p2", "nA", "x");
  t.apply_update("p3", "nB", "x");
  t.apply_update("p4", "nAA", "x");
  EXPECT_EQ(pks(t.index_lookup("nA")), (std::set<std::string>{"p1", "p2"}));
}

TEST(IndexedTable, ValidateChecksDataTree) {
  TempDir dir;
  IndexedTable t(storage(dir), cfg(IndexKind::kEager, Strategy::kValidation), "t");
  t.apply_update("p1", "n1", "x");
  t.apply_update("p1", "n2", "x");
  EXPECT_FALSE(t.validate("p1", "n1"));
  EXPECT_TRUE(t.validate("p1", "n2"));
  EXPECT_FALSE(t.validate("p9", "n1"));
  const auto before = t.data().io_stats().point_lookups;
  t.validate("p1", "n2");
  EXPECT_EQ(t.data().io_stats().point_lookups, before + 1);
}

TEST(IndexedTable, ValidationResolvedLookupChargesOneDataLookupPerCandidate) {
  TempDir dir;
  IndexedTable t(storage(dir), cfg(IndexKind::kEager, Strategy::kValidation), "t");
  t.apply_update("p1", "n", "x");
  t.apply_update("p2", "n", "x");
  t.apply_update("p3", "n", "x");
  t.apply_update("p2", "m", "x");
  t.apply_update("p3", "m", "x");
  t.reset_io_stats();
  auto got = t.resolved_lookup("n");
  EXPECT_EQ(pks(got), (std::set<std::string>{"p1"}));
  EXPECT_EQ(t.data().io_stats().point_lookups, 3u);
  t.reset_io_stats();
  EXPECT_TRUE(t.resolved_lookup("empty").empty());
  EXPECT_EQ(t.data().io_stats().point_lookups, 0u);
}

TEST(IndexedTable, SynchronousCoveringBypassesDataTree) {
  TempDir dir;
  for (auto kind : {IndexKind::kEager, IndexKind::kLazy, IndexKind::kComposite}) {
    IndexedTable t(storage(dir), cfg(kind, Strategy::kSynchronous, Coverage::kCovering),
                   "t" + std::to_string(static_cast<int>(kind)));
    t.apply_update("p1", "n", "pay1");
    t.apply_update("p2", "n", "pay2");
    t.reset_io_stats();
    auto got = t.resolved_lookup("n", true);
    ASSERT_EQ(got.size(), 2u);
    EXPECT_EQ(got[0].payload, "pay1");
    EXPECT_EQ(got[1].payload, "pay2");
    EXPECT_EQ(t.data().io_stats().point_lookups, 0u);
  }
}

TEST(IndexedTable, NonCoveringPayloadsFetchedOnDemand) {
  TempDir dir;
  IndexedTable t(storage(dir), cfg(IndexKind::kComposite, Strategy::kSynchronous), "t");
  t.apply_update("p1", "n", "pay1");
  t.reset_io_stats();
  auto ids = t.resolved_lookup("n");
  ASSERT_EQ(ids.size(), 1u);
  EXPECT_FALSE(ids[0].payload.has_value());
  EXPECT_EQ(t.data().io_stats().point_lookups, 0u);
  auto full = t.resolved_lookup("n", true);
  EXPECT_EQ(full[0].payload, "pay1");
  EXPECT_EQ(t.data().io_stats().point_lookups, 1u);
}

TEST(IndexedTable, RejectsSeparatorBytes) {
  TempDir dir;
  IndexedTable t(storage(dir), cfg(IndexKind::kComposite, Strategy::kSynchronous), "t");
  EXPECT_THROW(t.apply_update(std::string("p\0", 2), "n", "x"), Error);
  EXPECT_THROW(t.apply_update("p", "", "x"), Error);
}

// Every config, random updates: resolved lookups and ordered index scans agree
// with the data tree.
TEST(IndexProperty, ResolvedLookupMatchesDataTreeForAllConfigs) {
  TempDir dir;
  for (const auto& config : IndexConfig::all()) {
    SCOPED_TRACE(config.to_string());
    IndexedTable t(storage(dir, 4096), config, "prop_" + config.to_string());
    std::map<std::string, std::pair<std::string, std::string>> oracle;  // pk -> (attr, payload)
    std::mt19937_64 rng(std::hash<std::string>{}(config.to_string()));
    const int ops = 10000;
    for (int op = 0; op < ops; ++op) {
      std::string pk = "p" + std::to_string(rng() % 800);
      std::string attr = "n" + std::to_string(rng() % 60);
      std::string payload = "pl" + std::to_string(rng() % 1000);
      t.apply_update(pk, attr, payload);
      oracle[pk] = {attr, payload};
    }
    std::map<std::string, std::map<std::string, std::string>> expected;  // attr -> pk -> payload
    for (const auto& [pk, ap] : oracle) expected[ap.first][pk] = ap.second;
    for (int a = 0; a < 62; ++a) {
      const std::string attr = "n" + std::to_string(a);
      auto got = t.resolved_lookup(attr, true);
      std::map<std::string, std::string> got_map;
      for (const auto& c : got) {
        ASSERT_TRUE(c.payload.has_value());
        ASSERT_TRUE(got_map.emplace(c.pk, *c.payload).second) << "duplicate " << c.pk;
      }
      ASSERT_EQ(got_map, expected[attr]) << attr;
    }
    // The index scan is ordered; after validation it yields the same pairs.
    std::vector<std::pair<std::string, std::string>> scanned;
    for (auto scan = t.scan_index(); scan.valid(); scan.next()) {
      const auto& item = scan.item();
      if (!scanned.empty()) {
        ASSERT_LT(scanned.back(), std::make_pair(item.attr, item.pk));
      }
      scanned.emplace_back(item.attr, item.pk);
      if (!config.validation()) {
        ASSERT_EQ(oracle[item.pk].first, item.attr);
      }
    }
    std::set<std::pair<std::string, std::string>> live;
    for (const auto& [attr, pl] : scanned) {
      if (oracle[pl].first == attr) live.emplace(attr, pl);
    }
    ASSERT_EQ(live.size(), oracle.size());
    if (!config.validation()) {
      ASSERT_EQ(scanned.size(), oracle.size());
    }
  }
}
