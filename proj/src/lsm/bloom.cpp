#include "lsmjoin/lsm/bloom.hpp"

#include <algorithm>
#include <cmath>

#include "lsmjoin/common/coding.hpp"
#include "lsmjoin/common/error.hpp"
#include "lsmjoin/common/hash.hpp"

namespace lsmjoin::lsm {

namespace {

constexpr uint64_t kBloomSeed = 0x5bd1e995ULL;

class AlwaysTrueFilter final : public KeyFilter {
 public:
  bool may_contain(std::string_view) const override { return true; }
  std::string serialize() const override {
    std::string out;
    put_fixed32(out, 0);
    return out;
  }
};

}  // namespace

BloomFilterPolicy::BloomFilterPolicy(double bits_per_key) : bits_per_key_(bits_per_key) {
  if (bits_per_key < 0) throw ConfigError("bloom_bits_per_key must be >= 0");
  num_probes_ = bits_per_key == 0 ? 0 : std::clamp(static_cast<int>(std::lround(bits_per_key * std::log(2.0))), 1, 30);
}

std::unique_ptr<KeyFilter> BloomFilterPolicy::build(std::span<const std::string> keys) const {
  if (num_probes_ == 0) return std::make_unique<AlwaysTrueFilter>();
  uint64_t bits = std::max<uint64_t>(64, static_cast<uint64_t>(std::ceil(keys.size() * bits_per_key_)));
  std::vector<uint8_t> array((bits + 7) / 8, 0);
  bits = array.size() * 8;
  for (const auto& key : keys) {
    uint64_t h1 = hash64(key, kBloomSeed);
    uint64_t h2 = mix64(h1 ^ 0x9e3779b97f4a7c15ULL) | 1;
    for (int i = 0; i < num_probes_; ++i) {
      uint64_t bit = (h1 + static_cast<uint64_t>(i) * h2) % bits;
      array[bit / 8] |= static_cast<uint8_t>(1u << (bit % 8));
    }
  }
  return std::make_unique<BloomFilter>(num_probes_, std::move(array));
}

std::unique_ptr<KeyFilter> BloomFilterPolicy::deserialize(std::string_view bytes) const {
  if (bytes.size() < 4) throw CorruptionError("bloom filter blob too short");
  uint32_t probes = decode_fixed32(bytes.data());
  if (probes == 0) return std::make_unique<AlwaysTrueFilter>();
  bytes.remove_prefix(4);
  if (bytes.empty()) throw CorruptionError("bloom filter has no bits");
  std::vector<uint8_t> array(bytes.begin(), bytes.end());
  return std::make_unique<BloomFilter>(static_cast<int>(probes), std::move(array));
}

BloomFilter::BloomFilter(int num_probes, std::vector<uint8_t> bits)
    : num_probes_(num_probes), bits_(std::move(bits)) {}

bool BloomFilter::may_contain(std::string_view key) const {
  const uint64_t nbits = bits_.size() * 8;
  uint64_t h1 = hash64(key, kBloomSeed);
  uint64_t h2 = mix64(h1 ^ 0x9e3779b97f4a7c15ULL) | 1;
  for (int i = 0; i < num_probes_; ++i) {
    uint64_t bit = (h1 + static_cast<uint64_t>(i) * h2) % nbits;
    if ((bits_[bit / 8] & (1u << (bit % 8))) == 0) return false;
  }
  return true;
}

std::string BloomFilter::serialize() const {
  std::string out;
  put_fixed32(out, static_cast<uint32_t>(num_probes_));
  out.append(reinterpret_cast<const char*>(bits_.data()), bits_.size());
  return out;
}

}  // namespace lsmjoin::lsm
