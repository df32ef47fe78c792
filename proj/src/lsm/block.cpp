#include "lsmjoin/lsm/block.hpp"

#include "lsmjoin/common/error.hpp"

namespace lsmjoin::lsm {

BlockWriter::BlockWriter(File& file, uint64_t start_offset, uint32_t block_size, IoStats& stats,
                         bool keep_handles)
    : file_(file), offset_(start_offset), block_size_(block_size), stats_(stats), keep_handles_(keep_handles) {
  pending_.reserve(block_size);
}

void BlockWriter::add(std::string_view key, std::string_view value, uint64_t seq, EntryKind kind) {
  if (key.empty()) throw Error("records require a non-empty key");
  const size_t size = encoded_record_size(key.size(), value.size());
  if (!pending_.empty() && pending_.size() + size > block_size_) {
    emit_block(pending_, pending_first_key_);
  }
  if (pending_.empty()) pending_first_key_.assign(key);
  encode_record(pending_, key, value, seq, kind);
  ++records_;
  record_bytes_ += size;
  if (pending_.size() >= block_size_) emit_block(pending_, pending_first_key_);
}

void BlockWriter::finish() {
  if (!pending_.empty()) emit_block(pending_, pending_first_key_);
}

void BlockWriter::emit_block(std::string& bytes, std::string_view first_key) {
  const uint32_t units = static_cast<uint32_t>((bytes.size() + block_size_ - 1) / block_size_);
  bytes.resize(static_cast<size_t>(units) * block_size_, '\0');
  file_.write_at(offset_, bytes);
  if (keep_handles_) handles_.push_back(BlockHandle{offset_, units, std::string(first_key)});
  offset_ += bytes.size();
  units_ += units;
  stats_.blocks_written += units;
  bytes.clear();
}

namespace {

template <typename Sink>
void for_each_record(std::string_view bytes, Sink&& sink) {
  while (!bytes.empty()) {
    if (bytes.front() == '\0') break;  // padding
    std::string_view key;
    std::string_view value;
    if (!get_length_prefixed(bytes, key) || !get_length_prefixed(bytes, value) || bytes.size() < 8) {
      throw CorruptionError("truncated record in block");
    }
    uint64_t tag = decode_fixed64(bytes.data());
    bytes.remove_prefix(8);
    auto kind = static_cast<EntryKind>(tag & 0xff);
    if (kind != EntryKind::kPut && kind != EntryKind::kTombstone) {
      throw CorruptionError("bad record kind in block");
    }
    sink(key, value, tag >> 8, kind);
  }
}

}  // namespace

void decode_block(std::string_view bytes, std::vector<Entry>& out) {
  for_each_record(bytes, [&](std::string_view key, std::string_view value, uint64_t seq, EntryKind kind) {
    out.push_back(Entry{std::string(key), std::string(value), seq, kind});
  });
}

void decode_block_into(std::string_view bytes, std::vector<Entry>& out) {
  size_t n = 0;
  for_each_record(bytes, [&](std::string_view key, std::string_view value, uint64_t seq, EntryKind kind) {
    if (n == out.size()) out.emplace_back();
    Entry& e = out[n++];
    e.key.assign(key);
    e.value.assign(value);
    e.seq = seq;
    e.kind = kind;
  });
  out.resize(n);
}

std::string read_block_sequential(const File& file, uint64_t offset, uint32_t block_size, IoStats& stats,
                                  uint32_t& units) {
  std::string buf(block_size, '\0');
  file.read_at(offset, buf);
  units = 1;
  stats.blocks_read += 1;
  auto read_more = [&](uint32_t extra) {
    std::string more(static_cast<size_t>(extra) * block_size, '\0');
    file.read_at(offset + static_cast<uint64_t>(units) * block_size, more);
    stats.blocks_read += extra;
    units += extra;
    buf += more;
  };
  // Only the first record of a block can be oversized; find its full length.
  for (;;) {
    std::string_view view(buf);
    if (view.front() == '\0') return buf;
    uint64_t klen = 0;
    uint64_t vlen = 0;
    if (!get_varint(view, klen)) throw CorruptionError("bad key length in block");
    if (view.size() > klen) {
      view.remove_prefix(klen);
      if (get_varint(view, vlen)) {
        const uint64_t needed = varint_length(klen) + klen + varint_length(vlen) + vlen + 8;
        if (needed > buf.size()) {
          read_more(static_cast<uint32_t>((needed + block_size - 1) / block_size) - units);
        }
        return buf;
      }
    }
    read_more(1);
  }
}

}  // namespace lsmjoin::lsm
