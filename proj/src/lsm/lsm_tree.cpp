#include "lsmjoin/lsm/lsm_tree.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lsmjoin/common/error.hpp"

namespace lsmjoin::lsm {

std::string IoStats::to_string() const {
  std::ostringstream os;
  os << "blocks_read=" << blocks_read << " blocks_written=" << blocks_written << " seeks=" << seeks
     << " bloom_probes=" << bloom_probes << " bloom_negative=" << bloom_negative
     << " bloom_false_positive=" << bloom_false_positive << " point_lookups=" << point_lookups;
  return os.str();
}

void StorageConfig::validate() const {
  if (block_size == 0) throw ConfigError("block_size must be > 0");
  if (write_buffer_bytes < block_size) throw ConfigError("write_buffer_bytes must be >= block_size");
  if (size_ratio < 2) throw ConfigError("size_ratio must be >= 2");
  if (bloom_bits_per_key < 0) throw ConfigError("bloom_bits_per_key must be >= 0");
  if (data_dir.empty()) throw ConfigError("data_dir is required");
  if (merge_policy == MergePolicy::kPostingListMerge && !merge_operator) {
    throw ConfigError("posting-list-merge policy requires a merge operator");
  }
}

namespace {

class BufferCursor final : public EntryCursor {
 public:
  using Map = std::map<std::string, Entry, std::less<>>;
  BufferCursor(Map::const_iterator begin, Map::const_iterator end) : it_(begin), end_(end) {}
  bool valid() const override { return it_ != end_; }
  const Entry& entry() const override { return it_->second; }
  void next() override { ++it_; }

 private:
  Map::const_iterator it_;
  Map::const_iterator end_;
};

class VectorCursor final : public EntryCursor {
 public:
  explicit VectorCursor(std::vector<Entry> entries) : entries_(std::move(entries)) {}
  bool valid() const override { return pos_ < entries_.size(); }
  const Entry& entry() const override { return entries_[pos_]; }
  void next() override { ++pos_; }

 private:
  std::vector<Entry> entries_;
  size_t pos_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------
// RunCursor

RunCursor::RunCursor(std::shared_ptr<const Run> run, IoStats* stats) : run_(std::move(run)), stats_(stats) {}

void RunCursor::load(size_t block_index) {
  pos_ = 0;
  block_index_ = block_index;
  if (block_index < run_->fences().size()) {
    run_->load_block(block_index, *stats_, block_);
  } else {
    block_.clear();
  }
}

void RunCursor::seek_to_first() { load(0); }

void RunCursor::seek(std::string_view lower_bound) {
  load(run_->block_for(lower_bound));
  while (valid() && entry().key < lower_bound) next();
}

void RunCursor::next() {
  ++pos_;
  if (pos_ >= block_.size() && block_index_ + 1 < run_->fences().size()) load(block_index_ + 1);
}

// ---------------------------------------------------------------------------
// TreeIterator

TreeIterator::TreeIterator(std::vector<Source> sources, bool yield_fragments)
    : sources_(std::move(sources)), yield_fragments_(yield_fragments) {
  has_current_ = refill();
}

bool TreeIterator::refill() {
  pending_.clear();
  pending_pos_ = 0;
  for (;;) {
    // Sources are ordered newest level first, so the first minimum found is
    // the newest version of its key.
    Source* newest = nullptr;
    for (auto& s : sources_) {
      if (s.cursor->valid() && (newest == nullptr || s.cursor->entry().key < newest->cursor->entry().key)) {
        newest = &s;
      }
    }
    if (newest == nullptr) return false;
    if (!yield_fragments_) {
      // Only the newest version is visible. It is served straight from its
      // cursor; the cursors move past the key on the following next().
      newest_ = newest;
      current_level_ = newest->level;
      if (!newest->cursor->entry().is_tombstone()) return true;
      skip_newest();
      continue;
    }
    const std::string key = newest->cursor->entry().key;
    for (auto& s : sources_) {
      if (s.cursor->valid() && s.cursor->entry().key == key) {
        pending_.emplace_back(s.cursor->entry(), s.level);
        s.cursor->next();
      }
    }
    auto tomb = std::find_if(pending_.begin(), pending_.end(),
                             [](const auto& p) { return p.first.is_tombstone(); });
    pending_.erase(tomb, pending_.end());
    if (!pending_.empty()) {
      current_ = std::move(pending_[0].first);
      current_level_ = pending_[0].second;
      return true;
    }
  }
}

void TreeIterator::skip_newest() {
  const Entry& e = newest_->cursor->entry();
  // Older copies first: advancing the newest cursor may invalidate `e`.
  for (auto& s : sources_) {
    if (&s != newest_ && s.cursor->valid() && s.cursor->entry().key == e.key) s.cursor->next();
  }
  newest_->cursor->next();
  newest_ = nullptr;
}

void TreeIterator::next() {
  if (!has_current_) return;
  if (newest_ != nullptr) {
    skip_newest();
    has_current_ = refill();
    return;
  }
  if (pending_pos_ + 1 < pending_.size()) {
    ++pending_pos_;
    current_ = std::move(pending_[pending_pos_].first);
    current_level_ = pending_[pending_pos_].second;
    return;
  }
  has_current_ = refill();
}

// ---------------------------------------------------------------------------
// LsmTree

LsmTree::LsmTree(StorageConfig config, const std::string& name) : config_(std::move(config)) {
  config_.validate();
  filter_policy_ = config_.filter_policy ? config_.filter_policy
                                         : std::make_shared<BloomFilterPolicy>(config_.bloom_bits_per_key);
  dir_ = config_.data_dir / name;
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create tree directory " + dir_.string() + ": " + ec.message());
}

LsmTree::~LsmTree() {
  std::error_code ec;
  for (auto& run : levels_) {
    if (run) std::filesystem::remove(run->path(), ec);
  }
  std::filesystem::remove(dir_, ec);
}

std::filesystem::path LsmTree::next_run_path() {
  return dir_ / ("run_" + std::to_string(next_file_++) + ".sst");
}

void LsmTree::write_buffer(std::string_view key, std::string_view value, EntryKind kind) {
  if (key.empty()) throw Error("keys must be non-empty");
  const uint64_t seq = next_seq_++;
  auto it = buffer_.find(key);
  if (it == buffer_.end()) {
    Entry e{std::string(key), std::string(value), seq, kind};
    buffer_bytes_ += encoded_size(e);
    buffer_.emplace(e.key, std::move(e));
  } else {
    Entry& e = it->second;
    buffer_bytes_ -= encoded_size(e);
    if (config_.merge_policy == MergePolicy::kPostingListMerge && kind == EntryKind::kPut && !e.is_tombstone()) {
      e.value = config_.merge_operator->merge(value, e.value);
    } else {
      e.value.assign(value);
    }
    e.seq = seq;
    e.kind = kind;
    buffer_bytes_ += encoded_size(e);
  }
  if (buffer_bytes_ > config_.write_buffer_bytes) flush();
}

void LsmTree::put(std::string_view key, std::string_view value) { write_buffer(key, value, EntryKind::kPut); }

void LsmTree::remove(std::string_view key) { write_buffer(key, {}, EntryKind::kTombstone); }

std::optional<std::string> LsmTree::get(std::string_view key) {
  ++stats_.point_lookups;
  if (auto it = buffer_.find(key); it != buffer_.end()) {
    if (it->second.is_tombstone()) return std::nullopt;
    return it->second.value;
  }
  for (const auto& run : levels_) {
    if (!run) continue;
    ++stats_.bloom_probes;
    if (!run->may_contain(key)) {
      ++stats_.bloom_negative;
      continue;
    }
    auto found = run->find(key, stats_);
    if (!found) {
      ++stats_.bloom_false_positive;
      continue;
    }
    if (found->is_tombstone()) return std::nullopt;
    return std::move(found->value);
  }
  return std::nullopt;
}

std::vector<Fragment> LsmTree::collect_versions(std::string_view key) {
  ++stats_.point_lookups;
  std::vector<Fragment> out;
  if (auto it = buffer_.find(key); it != buffer_.end()) {
    if (it->second.is_tombstone()) return out;
    out.push_back(Fragment{it->second.value, it->second.seq, 0});
  }
  for (size_t i = 0; i < levels_.size(); ++i) {
    const auto& run = levels_[i];
    if (!run) continue;
    ++stats_.bloom_probes;
    if (!run->may_contain(key)) {
      ++stats_.bloom_negative;
      continue;
    }
    auto found = run->find(key, stats_);
    if (!found) {
      ++stats_.bloom_false_positive;
      continue;
    }
    if (found->is_tombstone()) break;
    out.push_back(Fragment{std::move(found->value), found->seq, static_cast<int>(i) + 1});
  }
  return out;
}

TreeIterator LsmTree::seek(std::string_view lower_bound, std::optional<std::string_view> prefix) {
  std::vector<TreeIterator::Source> sources;
  sources.push_back({std::make_unique<BufferCursor>(buffer_.lower_bound(lower_bound), buffer_.end()), 0});
  const bool use_prefix = prefix.has_value() && static_cast<bool>(config_.prefix_extractor);
  for (size_t i = 0; i < levels_.size(); ++i) {
    const auto& run = levels_[i];
    if (!run || run->max_key() < lower_bound) continue;
    if (use_prefix) {
      ++stats_.bloom_probes;
      if (!run->may_contain(*prefix)) {
        ++stats_.bloom_negative;
        continue;
      }
    }
    ++stats_.seeks;
    auto cursor = std::make_unique<RunCursor>(run, &stats_);
    cursor->seek(lower_bound);
    sources.push_back({std::move(cursor), static_cast<int>(i) + 1});
  }
  return TreeIterator(std::move(sources), config_.merge_policy == MergePolicy::kPostingListMerge);
}

bool LsmTree::is_bottom(int level) const {
  for (size_t i = static_cast<size_t>(level); i < levels_.size(); ++i) {
    if (levels_[i]) return false;
  }
  return true;
}

std::shared_ptr<Run> LsmTree::merge_runs(EntryCursor& newer, EntryCursor* older, bool bottom) {
  const bool merging = config_.merge_policy == MergePolicy::kPostingListMerge;
  const auto path = next_run_path();
  try {
    RunWriter writer(path, config_.block_size, filter_policy_, config_.prefix_extractor, stats_);
    auto emit = [&](Entry e) {
      if (bottom) {
        if (e.is_tombstone()) return;
        if (merging) {
          auto v = config_.merge_operator->finalize_bottom(e.value);
          if (!v) return;
          e.value = std::move(*v);
        }
      }
      writer.add(e);
    };
    while (newer.valid() || (older && older->valid())) {
      if (!older || !older->valid() || (newer.valid() && newer.entry().key < older->entry().key)) {
        emit(newer.entry());
        newer.next();
      } else if (!newer.valid() || older->entry().key < newer.entry().key) {
        emit(older->entry());
        older->next();
      } else {
        Entry combined = newer.entry();
        if (merging && !combined.is_tombstone() && !older->entry().is_tombstone()) {
          combined.value = config_.merge_operator->merge(combined.value, older->entry().value);
        }
        emit(std::move(combined));
        newer.next();
        older->next();
      }
    }
    return writer.finish();
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(path, ec);
    throw;
  }
}

void LsmTree::install(int level, std::shared_ptr<Run> run) {
  if (levels_.size() < static_cast<size_t>(level)) levels_.resize(static_cast<size_t>(level));
  auto& slot = levels_[static_cast<size_t>(level) - 1];
  if (slot && (!run || slot->path() != run->path())) {
    std::error_code ec;
    std::filesystem::remove(slot->path(), ec);
  }
  slot = std::move(run);
}

void LsmTree::flush() {
  if (buffer_.empty()) return;
  std::vector<Entry> snapshot;
  snapshot.reserve(buffer_.size());
  for (auto& [k, e] : buffer_) snapshot.push_back(e);
  VectorCursor newer(std::move(snapshot));
  std::shared_ptr<Run> merged;
  if (!levels_.empty() && levels_[0]) {
    RunCursor older(levels_[0], &stats_);
    older.seek_to_first();
    merged = merge_runs(newer, &older, is_bottom(1));
  } else {
    merged = merge_runs(newer, nullptr, is_bottom(1));
  }
  install(1, std::move(merged));
  buffer_.clear();
  buffer_bytes_ = 0;
  cascade();
}

void LsmTree::cascade() {
  for (int level = 1; level <= static_cast<int>(levels_.size()); ++level) {
    if (level_bytes(level) > level_capacity(level)) compact(level);
  }
}

void LsmTree::compact(int level) {
  if (level < 1 || level > static_cast<int>(levels_.size())) throw Error("compact: no such level");
  auto source = levels_[static_cast<size_t>(level) - 1];
  if (!source) return;
  const int target = level + 1;
  std::shared_ptr<Run> target_run =
      static_cast<int>(levels_.size()) >= target ? levels_[static_cast<size_t>(target) - 1] : nullptr;
  if (!target_run) {
    // Trivial move: the run is already sorted and nothing older overlaps it.
    if (levels_.size() < static_cast<size_t>(target)) levels_.resize(static_cast<size_t>(target));
    levels_[static_cast<size_t>(target) - 1] = std::move(source);
    levels_[static_cast<size_t>(level) - 1] = nullptr;
    return;
  }
  RunCursor newer(source, &stats_);
  newer.seek_to_first();
  RunCursor older(target_run, &stats_);
  older.seek_to_first();
  auto merged = merge_runs(newer, &older, is_bottom(target));
  install(target, std::move(merged));
  install(level, nullptr);
}

void LsmTree::compact_to_bottom() {
  flush();
  for (int level = 1; level < static_cast<int>(levels_.size()); ++level) compact(level);
  if (levels_.empty() || !levels_.back()) return;
  // Rewrite the bottom run alone so tombstones and merge leftovers are dropped.
  auto bottom = levels_.back();
  RunCursor cursor(bottom, &stats_);
  cursor.seek_to_first();
  auto rewritten = merge_runs(cursor, nullptr, true);
  install(static_cast<int>(levels_.size()), std::move(rewritten));
  while (!levels_.empty() && !levels_.back()) levels_.pop_back();
}

int LsmTree::level_count() const {
  for (int i = static_cast<int>(levels_.size()); i >= 1; --i) {
    if (levels_[static_cast<size_t>(i) - 1]) return i;
  }
  return 0;
}

uint64_t LsmTree::level_capacity(int level) const {
  double cap = static_cast<double>(config_.write_buffer_bytes) * std::pow(config_.size_ratio, level);
  return cap > 1.8e19 ? UINT64_MAX : static_cast<uint64_t>(cap);
}

uint64_t LsmTree::level_bytes(int level) const {
  if (level < 1 || level > static_cast<int>(levels_.size())) return 0;
  const auto& run = levels_[static_cast<size_t>(level) - 1];
  return run ? run->data_bytes() : 0;
}

std::shared_ptr<const Run> LsmTree::level_run(int level) const {
  if (level < 1 || level > static_cast<int>(levels_.size())) return nullptr;
  return levels_[static_cast<size_t>(level) - 1];
}

uint64_t LsmTree::total_bytes() const {
  uint64_t total = buffer_bytes_;
  for (const auto& run : levels_) {
    if (run) total += run->data_bytes();
  }
  return total;
}

std::vector<Entry> LsmTree::dump_level(int level) const {
  if (level == 0) {
    std::vector<Entry> out;
    for (const auto& [k, e] : buffer_) out.push_back(e);
    return out;
  }
  auto run = level_run(level);
  return run ? run->read_all_uncounted() : std::vector<Entry>{};
}

}  // namespace lsmjoin::lsm
