#pragma once

#include <cstdint>
#include <vector>

#include "lsmjoin/workload/rng.hpp"

namespace lsmjoin::workload {

// P(rank = i) proportional to 1 / i^theta over ranks 1..n; theta = 0 is uniform.
// Sampling inverts a precomputed CDF.
class ZipfDistribution {
 public:
  ZipfDistribution(uint64_t n, double theta);

  uint64_t sample(Rng& rng) const;
  double probability(uint64_t rank) const;
  uint64_t n() const { return n_; }
  double theta() const { return theta_; }

 private:
  uint64_t n_;
  double theta_;
  std::vector<double> cdf_;
};

uint64_t zipf_sample(Rng& rng, uint64_t n_items, double theta);

}  // namespace lsmjoin::workload
