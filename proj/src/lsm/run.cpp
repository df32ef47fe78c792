#include "lsmjoin/lsm/run.hpp"

#include <algorithm>

#include "lsmjoin/common/coding.hpp"
#include "lsmjoin/common/error.hpp"

namespace lsmjoin::lsm {

namespace {

constexpr char kMagic[4] = {'L', 'S', 'M', 'J'};

}  // namespace

uint64_t Run::block_units() const {
  uint64_t n = 0;
  for (const auto& f : fences_) n += f.units;
  return n;
}

size_t Run::block_for(std::string_view key) const {
  auto it = std::upper_bound(fences_.begin(), fences_.end(), key,
                             [](std::string_view k, const BlockHandle& h) { return k < h.first_key; });
  if (it == fences_.begin()) return 0;
  return static_cast<size_t>(std::distance(fences_.begin(), it)) - 1;
}

void Run::read_block(size_t index, IoStats& stats, std::vector<Entry>& out) const {
  const auto& handle = fences_.at(index);
  std::string buf(static_cast<size_t>(handle.units) * block_size_, '\0');
  file_.read_at(handle.offset, buf);
  stats.blocks_read += handle.units;
  decode_block(buf, out);
}

void Run::load_block(size_t index, IoStats& stats, std::vector<Entry>& out) const {
  const auto& handle = fences_.at(index);
  thread_local std::string buf;
  buf.resize(static_cast<size_t>(handle.units) * block_size_);
  file_.read_at(handle.offset, buf);
  stats.blocks_read += handle.units;
  decode_block_into(buf, out);
}

std::optional<Entry> Run::find(std::string_view key, IoStats& stats) const {
  if (!key_in_range(key)) return std::nullopt;
  std::vector<Entry> block;
  read_block(block_for(key), stats, block);
  auto it = std::lower_bound(block.begin(), block.end(), key,
                             [](const Entry& e, std::string_view k) { return e.key < k; });
  if (it != block.end() && it->key == key) return std::move(*it);
  return std::nullopt;
}

std::vector<Entry> Run::read_all_uncounted() const {
  IoStats scratch;
  std::vector<Entry> out;
  for (size_t i = 0; i < fences_.size(); ++i) read_block(i, scratch, out);
  return out;
}

std::shared_ptr<Run> Run::open(const std::filesystem::path& path, const FilterPolicy& policy) {
  auto run = std::shared_ptr<Run>(new Run());
  run->path_ = path;
  run->file_ = File(path, File::Mode::kRead);
  const uint64_t size = run->file_.size();
  if (size < kHeaderSize + 8) throw CorruptionError("run file too small: " + path.string());

  std::string header(kHeaderSize, '\0');
  run->file_.read_at(0, header);
  if (!std::equal(kMagic, kMagic + 4, header.data())) throw CorruptionError("bad run magic: " + path.string());
  if (decode_fixed32(header.data() + 4) != kFormatVersion) throw CorruptionError("unsupported run version");
  run->entry_count_ = decode_fixed64(header.data() + 8);
  run->block_size_ = decode_fixed32(header.data() + 16);

  std::string tail(8, '\0');
  run->file_.read_at(size - 8, tail);
  const uint64_t footer_len = decode_fixed64(tail.data());
  if (footer_len + 8 + kHeaderSize > size) throw CorruptionError("bad footer length");
  std::string footer(footer_len, '\0');
  run->file_.read_at(size - 8 - footer_len, footer);

  std::string_view in(footer);
  auto need = [&](size_t n) {
    if (in.size() < n) throw CorruptionError("truncated run footer");
  };
  need(8);
  const uint64_t fence_count = decode_fixed64(in.data());
  in.remove_prefix(8);
  for (uint64_t i = 0; i < fence_count; ++i) {
    need(16);
    BlockHandle h;
    h.offset = decode_fixed64(in.data());
    h.units = decode_fixed32(in.data() + 8);
    const uint32_t klen = decode_fixed32(in.data() + 12);
    in.remove_prefix(16);
    need(klen);
    h.first_key.assign(in.substr(0, klen));
    in.remove_prefix(klen);
    run->fences_.push_back(std::move(h));
  }
  need(4);
  const uint32_t max_len = decode_fixed32(in.data());
  in.remove_prefix(4);
  need(max_len + 16);
  run->max_key_.assign(in.substr(0, max_len));
  in.remove_prefix(max_len);
  run->data_bytes_ = decode_fixed64(in.data());
  const uint64_t filter_len = decode_fixed64(in.data() + 8);
  in.remove_prefix(16);
  need(filter_len);
  run->filter_ = policy.deserialize(in.substr(0, filter_len));
  if (run->fences_.empty()) throw CorruptionError("run without blocks");
  return run;
}

RunWriter::RunWriter(std::filesystem::path path, uint32_t block_size, std::shared_ptr<const FilterPolicy> policy,
                     std::function<std::string_view(std::string_view)> prefix_extractor, IoStats& stats)
    : path_(std::move(path)),
      block_size_(block_size),
      policy_(std::move(policy)),
      prefix_extractor_(std::move(prefix_extractor)),
      file_(path_, File::Mode::kWriteTruncate) {
  blocks_ = std::make_unique<BlockWriter>(file_, Run::kHeaderSize, block_size_, stats, true);
}

void RunWriter::add(const Entry& e) {
  if (blocks_->record_count() > 0 && e.key <= last_key_) {
    throw Error("run entries must be strictly ascending");
  }
  blocks_->add(e);
  last_key_ = e.key;
  filter_keys_.push_back(e.key);
  if (prefix_extractor_) {
    std::string_view prefix = prefix_extractor_(e.key);
    if (prefix != last_prefix_ || filter_keys_.size() == 1) {
      last_prefix_.assign(prefix);
      if (prefix != e.key) filter_keys_.emplace_back(prefix);
    }
  }
}

std::shared_ptr<Run> RunWriter::finish() {
  blocks_->finish();
  if (blocks_->record_count() == 0) {
    file_.close();
    std::error_code ec;
    std::filesystem::remove(path_, ec);
    return nullptr;
  }
  auto run = std::shared_ptr<Run>(new Run());
  run->path_ = path_;
  run->entry_count_ = blocks_->record_count();
  run->data_bytes_ = blocks_->record_bytes();
  run->block_size_ = block_size_;
  run->fences_ = blocks_->handles();
  run->max_key_ = last_key_;
  run->filter_ = policy_->build(filter_keys_);

  std::string footer;
  put_fixed64(footer, run->fences_.size());
  for (const auto& h : run->fences_) {
    put_fixed64(footer, h.offset);
    put_fixed32(footer, h.units);
    put_fixed32(footer, static_cast<uint32_t>(h.first_key.size()));
    footer.append(h.first_key);
  }
  put_fixed32(footer, static_cast<uint32_t>(run->max_key_.size()));
  footer.append(run->max_key_);
  put_fixed64(footer, run->data_bytes_);
  const std::string filter = run->filter_->serialize();
  put_fixed64(footer, filter.size());
  footer.append(filter);
  put_fixed64(footer, footer.size());
  file_.write_at(blocks_->end_offset(), footer);

  std::string header(kMagic, 4);
  put_fixed32(header, Run::kFormatVersion);
  put_fixed64(header, run->entry_count_);
  put_fixed32(header, block_size_);
  file_.write_at(0, header);
  file_.close();

  run->file_ = File(path_, File::Mode::kRead);
  return run;
}

}  // namespace lsmjoin::lsm
