#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lsmjoin/index/index_config.hpp"
#include "lsmjoin/index/posting_list.hpp"
#include "lsmjoin/lsm/lsm_tree.hpp"

namespace lsmjoin::index {

// A data-table record: the value stored under a primary key is attr 0x00 payload.
struct Record {
  std::string attr;
  std::string payload;
};

std::string encode_record_value(std::string_view attr, std::string_view payload);
Record decode_record_value(std::string_view value);
// Attribute part of a data-record value, without copying.
std::string_view record_attr(std::string_view value);

struct Candidate {
  std::string pk;
  std::optional<std::string> payload;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// One (attr, pk) pair from an ordered index scan. Under Validation the pair
// may be stale.
struct IndexItem {
  std::string attr;
  std::string pk;
  std::optional<std::string> payload;
};

// Ascending (attr, pk) stream over an index tree, expanding posting lists.
class IndexScan {
 public:
  bool valid() const { return pos_ < items_.size(); }
  const IndexItem& item() const { return items_[pos_]; }
  void next();

 private:
  friend class IndexedTable;
  IndexScan(lsm::TreeIterator it, IndexConfig config);
  void fill();

  lsm::TreeIterator it_;
  IndexConfig config_;
  std::vector<IndexItem> items_;
  size_t pos_ = 0;
};

// A data tree keyed by primary key plus an optional secondary index on the
// join attribute. Updates write the index first and the data record last.
class IndexedTable {
 public:
  // `storage.data_dir` hosts both trees; `index` may be absent.
  IndexedTable(const lsm::StorageConfig& storage, std::optional<IndexConfig> index, const std::string& name);

  void apply_update(std::string_view pk, std::string_view attr, std::string_view payload);

  // Charged data-tree point lookup.
  std::optional<Record> get_record(std::string_view pk);
  // Raw index candidates for `attr`; possibly stale under Validation.
  std::vector<Candidate> index_lookup(std::string_view attr);
  // True iff the data tree maps pk to a record whose attribute is `attr`.
  bool validate(std::string_view pk, std::string_view attr);
  // Candidates that are live in the data tree. Payloads are filled in when
  // the index is covering or `need_payload` is set (fetching them from the
  // data tree for non-covering indexes).
  std::vector<Candidate> resolved_lookup(std::string_view attr, bool need_payload = false);

  // Ordered scan of the index tree. Requires an index.
  IndexScan scan_index();

  lsm::LsmTree& data() { return *data_; }
  lsm::LsmTree* index_tree() { return index_.get(); }
  const std::optional<IndexConfig>& config() const { return config_; }
  bool has_index() const { return config_.has_value(); }

  lsm::IoStats io_stats() const;
  void reset_io_stats();

 private:
  void update_eager(std::string_view pk, std::string_view attr, std::string_view payload,
                    const std::optional<Record>& old);
  void update_lazy(std::string_view pk, std::string_view attr, std::string_view payload,
                   const std::optional<Record>& old);
  void update_composite(std::string_view pk, std::string_view attr, std::string_view payload,
                        const std::optional<Record>& old);
  std::optional<PostingList> read_posting(std::string_view attr);

  std::optional<IndexConfig> config_;
  std::unique_ptr<lsm::LsmTree> data_;
  std::unique_ptr<lsm::LsmTree> index_;
};

}  // namespace lsmjoin::index
