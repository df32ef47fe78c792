#include "lsmjoin/join/sources.hpp"

namespace lsmjoin::join {

namespace {

class SpillStream final : public SortedStream {
 public:
  SpillStream(SpillPtr file, lsm::IoStats& stats) : reader_(std::move(file), stats) {}
  bool valid() const override { return reader_.valid(); }
  const std::string& attr() const override { return reader_.record().attr; }
  const std::string& pk() const override { return reader_.record().pk; }
  void next() override { reader_.next(); }

 private:
  SpillReader reader_;
};

class IndexStream final : public SortedStream {
 public:
  IndexStream(index::IndexScan scan, bool validation) : scan_(std::move(scan)), validation_(validation) {}
  bool valid() const override { return scan_.valid(); }
  const std::string& attr() const override { return scan_.item().attr; }
  const std::string& pk() const override { return scan_.item().pk; }
  void next() override { scan_.next(); }
  bool needs_validation() const override { return validation_; }

 private:
  index::IndexScan scan_;
  bool validation_;
};

class PrimaryStream final : public SortedStream {
 public:
  explicit PrimaryStream(lsm::TreeIterator it) : it_(std::move(it)) { load(); }
  bool valid() const override { return it_.valid(); }
  const std::string& attr() const override { return attr_; }
  const std::string& pk() const override { return it_.entry().key; }
  void next() override {
    it_.next();
    load();
  }

 private:
  void load() {
    if (it_.valid()) attr_ = index::decode_record_value(it_.entry().value).attr;
  }
  lsm::TreeIterator it_;
  std::string attr_;
};

}  // namespace

RecordSource data_records(index::IndexedTable& table) {
  auto it = std::make_shared<lsm::TreeIterator>(table.data().full_scan());
  return [it](JoinRecord& out) {
    if (!it->valid()) return false;
    auto rec = index::decode_record_value(it->entry().value);
    out.pk = it->entry().key;
    out.attr = std::move(rec.attr);
    out.payload = std::move(rec.payload);
    it->next();
    return true;
  };
}

std::unique_ptr<SortedStream> spill_stream(SpillPtr file, lsm::IoStats& stats) {
  return std::make_unique<SpillStream>(std::move(file), stats);
}

std::unique_ptr<SortedStream> index_stream(index::IndexedTable& table) {
  return std::make_unique<IndexStream>(table.scan_index(), table.config()->validation());
}

std::unique_ptr<SortedStream> primary_stream(index::IndexedTable& table) {
  return std::make_unique<PrimaryStream>(table.data().full_scan());
}

}  // namespace lsmjoin::join
