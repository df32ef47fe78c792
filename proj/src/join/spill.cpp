#include "lsmjoin/join/spill.hpp"

#include "lsmjoin/common/error.hpp"
#include "lsmjoin/lsm/entry.hpp"

namespace lsmjoin::join {

size_t JoinRecord::encoded_size() const { return lsm::encoded_record_size(attr.size(), pk.size() + 1 + payload.size()); }

SpillFile::SpillFile(std::filesystem::path path, uint32_t block_size, uint64_t end_offset, uint64_t records,
                     uint64_t bytes)
    : path_(std::move(path)), block_size_(block_size), end_offset_(end_offset), records_(records), bytes_(bytes) {}

SpillFile::~SpillFile() {
  std::error_code ec;
  std::filesystem::remove(path_, ec);
}

SpillWriter::SpillWriter(std::filesystem::path path, uint32_t block_size, lsm::IoStats& stats)
    : path_(std::move(path)),
      block_size_(block_size),
      file_(std::make_unique<File>(path_, File::Mode::kWriteTruncate)) {
  blocks_ = std::make_unique<lsm::BlockWriter>(*file_, 0, block_size_, stats, false);
}

void SpillWriter::add(const JoinRecord& r) {
  value_.clear();
  value_.append(r.pk);
  value_.push_back('\0');
  value_.append(r.payload);
  blocks_->add(r.attr, value_, 0, lsm::EntryKind::kPut);
}

SpillPtr SpillWriter::finish() {
  blocks_->finish();
  file_->close();
  return std::make_shared<SpillFile>(path_, block_size_, blocks_->end_offset(), blocks_->record_count(),
                                     blocks_->record_bytes());
}

SpillReader::SpillReader(SpillPtr file, lsm::IoStats& stats) : spill_(std::move(file)), stats_(stats) {
  if (spill_->end_offset() > 0) {
    file_ = File(spill_->path(), File::Mode::kRead);
    load();
  }
}

void SpillReader::load() {
  block_.clear();
  pos_ = 0;
  std::vector<lsm::Entry> entries;
  while (block_.empty() && offset_ < spill_->end_offset()) {
    uint32_t units = 0;
    std::string bytes = lsm::read_block_sequential(file_, offset_, spill_->block_size(), stats_, units);
    offset_ += static_cast<uint64_t>(units) * spill_->block_size();
    entries.clear();
    lsm::decode_block(bytes, entries);
    for (auto& e : entries) {
      const auto sep = e.value.find('\0');
      if (sep == std::string::npos) throw CorruptionError("spill record without separator");
      block_.push_back(JoinRecord{std::move(e.key), e.value.substr(0, sep), e.value.substr(sep + 1)});
    }
  }
}

void SpillReader::next() {
  if (++pos_ >= block_.size()) load();
}

SpillArea::SpillArea(const std::filesystem::path& dir, uint32_t block_size, lsm::IoStats& stats)
    : dir_(dir), block_size_(block_size), stats_(stats) {}

SpillWriter SpillArea::writer(const std::string& tag) {
  return SpillWriter(dir_ / (tag + "_" + std::to_string(next_++) + ".spill"), block_size_, stats_);
}

}  // namespace lsmjoin::join
