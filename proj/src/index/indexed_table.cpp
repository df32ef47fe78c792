#include "lsmjoin/index/indexed_table.hpp"

#include "lsmjoin/common/error.hpp"

namespace lsmjoin::index {

std::string encode_record_value(std::string_view attr, std::string_view payload) {
  std::string v;
  v.reserve(attr.size() + 1 + payload.size());
  v.append(attr);
  v.push_back('\0');
  v.append(payload);
  return v;
}

Record decode_record_value(std::string_view value) {
  const auto pos = value.find('\0');
  if (pos == std::string_view::npos) throw CorruptionError("data record without attribute separator");
  return Record{std::string(value.substr(0, pos)), std::string(value.substr(pos + 1))};
}

std::string_view record_attr(std::string_view value) {
  const auto pos = value.find('\0');
  if (pos == std::string_view::npos) throw CorruptionError("data record without attribute separator");
  return value.substr(0, pos);
}

// ---------------------------------------------------------------------------
// IndexScan

IndexScan::IndexScan(lsm::TreeIterator it, IndexConfig config) : it_(std::move(it)), config_(config) { fill(); }

void IndexScan::next() {
  if (++pos_ >= items_.size()) fill();
}

void IndexScan::fill() {
  items_.clear();
  pos_ = 0;
  while (items_.empty() && it_.valid()) {
    const std::string key = it_.entry().key;
    if (config_.kind == IndexKind::kComposite) {
      auto [attr, pk] = split_composite(key);
      std::optional<std::string> payload;
      if (config_.covering()) payload = it_.entry().value;
      items_.push_back(IndexItem{std::string(attr), std::string(pk), std::move(payload)});
      it_.next();
      continue;
    }
    PostingList pl = decode_posting(it_.entry().value);
    it_.next();
    // Lazy trees yield every unmerged fragment of a key, newest first.
    while (config_.kind == IndexKind::kLazy && it_.valid() && it_.entry().key == key) {
      pl = compose(pl, decode_posting(it_.entry().value));
      it_.next();
    }
    for (auto& [pk, payload] : pl.adds) {
      std::optional<std::string> p;
      if (config_.covering()) p = payload;
      items_.push_back(IndexItem{key, pk, std::move(p)});
    }
  }
}

// ---------------------------------------------------------------------------
// IndexedTable

IndexedTable::IndexedTable(const lsm::StorageConfig& storage, std::optional<IndexConfig> index,
                           const std::string& name)
    : config_(index) {
  lsm::StorageConfig data_cfg = storage;
  data_cfg.merge_policy = lsm::MergePolicy::kPlain;
  data_cfg.merge_operator = nullptr;
  data_cfg.prefix_extractor = nullptr;
  data_ = std::make_unique<lsm::LsmTree>(data_cfg, name + "_data");
  if (!config_) return;

  lsm::StorageConfig index_cfg = data_cfg;
  if (config_->kind == IndexKind::kLazy) {
    index_cfg.merge_policy = lsm::MergePolicy::kPostingListMerge;
    index_cfg.merge_operator = std::make_shared<PostingMergeOperator>();
  } else if (config_->kind == IndexKind::kComposite) {
    index_cfg.prefix_extractor = [](std::string_view k) {
      const auto pos = k.find('\0');
      return pos == std::string_view::npos ? k : k.substr(0, pos);
    };
  }
  index_ = std::make_unique<lsm::LsmTree>(index_cfg, name + "_index");
}

std::optional<Record> IndexedTable::get_record(std::string_view pk) {
  auto v = data_->get(pk);
  if (!v) return std::nullopt;
  return decode_record_value(*v);
}

void IndexedTable::apply_update(std::string_view pk, std::string_view attr, std::string_view payload) {
  if (pk.empty() || attr.empty()) throw Error("primary key and attribute must be non-empty");
  if (pk.find('\0') != std::string_view::npos || attr.find('\0') != std::string_view::npos) {
    throw Error("primary key and attribute must not contain 0x00");
  }
  if (config_) {
    std::optional<Record> old;
    if (!config_->validation()) old = get_record(pk);
    switch (config_->kind) {
      case IndexKind::kEager:
        update_eager(pk, attr, payload, old);
        break;
      case IndexKind::kLazy:
        update_lazy(pk, attr, payload, old);
        break;
      case IndexKind::kComposite:
        update_composite(pk, attr, payload, old);
        break;
    }
  }
  data_->put(pk, encode_record_value(attr, payload));
}

std::optional<PostingList> IndexedTable::read_posting(std::string_view attr) {
  auto v = index_->get(attr);
  if (!v) return std::nullopt;
  return decode_posting(*v);
}

void IndexedTable::update_eager(std::string_view pk, std::string_view attr, std::string_view payload,
                                const std::optional<Record>& old) {
  if (old && old->attr != attr) {
    if (auto pl = read_posting(old->attr)) {
      if (pl->adds.erase(std::string(pk)) > 0) {
        if (pl->adds.empty()) {
          index_->remove(old->attr);
        } else {
          index_->put(old->attr, encode_posting(*pl));
        }
      }
    }
  }
  PostingList pl = read_posting(attr).value_or(PostingList{});
  pl.covering = config_->covering();
  pl.adds.insert_or_assign(std::string(pk), config_->covering() ? std::string(payload) : std::string());
  index_->put(attr, encode_posting(pl));
}

void IndexedTable::update_lazy(std::string_view pk, std::string_view attr, std::string_view payload,
                               const std::optional<Record>& old) {
  if (old && old->attr != attr) {
    PostingList removal;
    removal.removes.emplace(pk);
    index_->put(old->attr, encode_posting(removal));
  }
  PostingList add;
  add.covering = config_->covering();
  add.adds.emplace(std::string(pk), config_->covering() ? std::string(payload) : std::string());
  index_->put(attr, encode_posting(add));
}

void IndexedTable::update_composite(std::string_view pk, std::string_view attr, std::string_view payload,
                                    const std::optional<Record>& old) {
  if (old && old->attr != attr) index_->remove(composite_key(old->attr, pk));
  index_->put(composite_key(attr, pk), config_->covering() ? std::string(payload) : std::string());
}

std::vector<Candidate> IndexedTable::index_lookup(std::string_view attr) {
  if (!config_) throw ConfigError("table has no secondary index");
  std::vector<Candidate> out;
  auto emit_list = [&](const PostingList& pl) {
    for (const auto& [pk, payload] : pl.adds) {
      Candidate c{pk, std::nullopt};
      if (config_->covering()) c.payload = payload;
      out.push_back(std::move(c));
    }
  };
  switch (config_->kind) {
    case IndexKind::kEager:
      if (auto pl = read_posting(attr)) emit_list(*pl);
      break;
    case IndexKind::kLazy: {
      auto frags = index_->collect_versions(attr);
      PostingList merged;
      for (const auto& f : frags) merged = compose(merged, decode_posting(f.value));
      emit_list(merged);
      break;
    }
    case IndexKind::kComposite: {
      const std::string lower = composite_key(attr, "");
      for (auto it = index_->seek(lower, attr); it.valid(); it.next()) {
        std::string_view key = it.entry().key;
        if (key.substr(0, lower.size()) != lower) break;
        Candidate c{std::string(key.substr(lower.size())), std::nullopt};
        if (config_->covering()) c.payload = it.entry().value;
        out.push_back(std::move(c));
      }
      break;
    }
  }
  return out;
}

bool IndexedTable::validate(std::string_view pk, std::string_view attr) {
  auto rec = get_record(pk);
  return rec && rec->attr == attr;
}

std::vector<Candidate> IndexedTable::resolved_lookup(std::string_view attr, bool need_payload) {
  auto candidates = index_lookup(attr);
  if (!config_->validation() && (config_->covering() || !need_payload)) return candidates;
  std::vector<Candidate> out;
  out.reserve(candidates.size());
  for (auto& c : candidates) {
    // One data lookup serves both validation and payload retrieval.
    auto rec = get_record(c.pk);
    if (!rec || rec->attr != attr) {
      if (config_->validation()) continue;
      throw CorruptionError("synchronous index references a missing record");
    }
    if (need_payload && !c.payload) c.payload = std::move(rec->payload);
    out.push_back(std::move(c));
  }
  return out;
}

IndexScan IndexedTable::scan_index() {
  if (!config_) throw ConfigError("table has no secondary index");
  return IndexScan(index_->full_scan(), *config_);
}

lsm::IoStats IndexedTable::io_stats() const {
  lsm::IoStats s = data_->io_stats();
  if (index_) s += index_->io_stats();
  return s;
}

void IndexedTable::reset_io_stats() {
  data_->reset_io_stats();
  if (index_) index_->reset_io_stats();
}

}  // namespace lsmjoin::index
