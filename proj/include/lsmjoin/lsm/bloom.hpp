#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lsmjoin::lsm {

class KeyFilter {
 public:
  virtual ~KeyFilter() = default;
  virtual bool may_contain(std::string_view key) const = 0;
  virtual std::string serialize() const = 0;
};

class FilterPolicy {
 public:
  virtual ~FilterPolicy() = default;
  virtual std::unique_ptr<KeyFilter> build(std::span<const std::string> keys) const = 0;
  virtual std::unique_ptr<KeyFilter> deserialize(std::string_view bytes) const = 0;
};

// k = round(bits_per_key * ln 2) probes derived by double hashing one 64-bit
// digest. bits_per_key == 0 yields a filter that always answers true.
class BloomFilterPolicy final : public FilterPolicy {
 public:
  explicit BloomFilterPolicy(double bits_per_key);

  std::unique_ptr<KeyFilter> build(std::span<const std::string> keys) const override;
  std::unique_ptr<KeyFilter> deserialize(std::string_view bytes) const override;

  double bits_per_key() const { return bits_per_key_; }
  int num_probes() const { return num_probes_; }

 private:
  double bits_per_key_;
  int num_probes_;
};

class BloomFilter final : public KeyFilter {
 public:
  BloomFilter(int num_probes, std::vector<uint8_t> bits);

  bool may_contain(std::string_view key) const override;
  std::string serialize() const override;

  size_t bit_count() const { return bits_.size() * 8; }

 private:
  int num_probes_;
  std::vector<uint8_t> bits_;
};

}  // namespace lsmjoin::lsm
