#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace lsmjoin::workload {

// mt19937_64 with portable derived draws: the standard distributions are
// implementation-defined, so streams would differ across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }
  // Uniform in [0, n); n > 0. Rejection sampling, no modulo bias.
  uint64_t uniform(uint64_t n);
  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lsmjoin::workload
