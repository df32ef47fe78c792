#pragma once

#include <cstdint>
#include <string_view>

namespace lsmjoin {

// 64-bit finalizer from MurmurHash3.
constexpr uint64_t mix64(uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

// FNV-1a over the bytes, then mix64. Stable across platforms; used for Bloom
// filter digests and result digests.
uint64_t hash64(std::string_view bytes, uint64_t seed = 0);

// Order-independent digest of a multiset of byte strings: the wrapping sum of
// per-element hashes plus an element count.
class MultisetDigest {
 public:
  void add(std::string_view element) {
    sum_ += hash64(element, 0x9e3779b97f4a7c15ULL);
    ++count_;
  }
  void merge(const MultisetDigest& other) {
    sum_ += other.sum_;
    count_ += other.count_;
  }
  uint64_t value() const { return mix64(sum_ ^ mix64(count_)); }
  uint64_t count() const { return count_; }

  friend bool operator==(const MultisetDigest&, const MultisetDigest&) = default;

 private:
  uint64_t sum_ = 0;
  uint64_t count_ = 0;
};

}  // namespace lsmjoin
