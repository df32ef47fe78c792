#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "lsmjoin/common/coding.hpp"

namespace lsmjoin::lsm {

enum class EntryKind : uint8_t { kPut = 1, kTombstone = 2 };

struct Entry {
  std::string key;
  std::string value;
  uint64_t seq = 0;
  EntryKind kind = EntryKind::kPut;

  bool is_tombstone() const { return kind == EntryKind::kTombstone; }
  friend bool operator==(const Entry&, const Entry&) = default;
};

// On-disk record: [varint key_len][key][varint val_len][value][u64 seq<<8 | kind].
// The encoded size is the entry size `e` used by every cost formula.
inline size_t encoded_record_size(size_t key_len, size_t value_len) {
  return varint_length(key_len) + key_len + varint_length(value_len) + value_len + 8;
}

inline size_t encoded_size(const Entry& e) { return encoded_record_size(e.key.size(), e.value.size()); }

inline void encode_record(std::string& dst, std::string_view key, std::string_view value, uint64_t seq,
                          EntryKind kind) {
  put_length_prefixed(dst, key);
  put_length_prefixed(dst, value);
  put_fixed64(dst, (seq << 8) | static_cast<uint8_t>(kind));
}

// Largest value length v such that encoded_record_size(key_len, v) <= target,
// or -1 when even an empty value does not fit.
inline long long value_length_for_record_size(size_t key_len, size_t target) {
  for (long long v = static_cast<long long>(target); v >= 0; --v) {
    if (encoded_record_size(key_len, static_cast<size_t>(v)) <= target) return v;
  }
  return -1;
}

}  // namespace lsmjoin::lsm
