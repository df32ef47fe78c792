#include "lsmjoin/workload/zipf.hpp"

#include <algorithm>
#include <cmath>

#include "lsmjoin/common/error.hpp"

namespace lsmjoin::workload {

ZipfDistribution::ZipfDistribution(uint64_t n, double theta) : n_(n), theta_(theta) {
  if (n == 0) throw ParameterError("zipf domain must be non-empty");
  if (!(theta >= 0) || !std::isfinite(theta)) throw ParameterError("zipf theta must be >= 0");
  cdf_.resize(n);
  double sum = 0;
  for (uint64_t i = 0; i < n; ++i) {
    sum += std::pow(static_cast<double>(i + 1), -theta);
    cdf_[i] = sum;
  }
  for (double& c : cdf_) c /= sum;
  cdf_.back() = 1.0;
}

uint64_t ZipfDistribution::sample(Rng& rng) const {
  const double u = rng.uniform01();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return static_cast<uint64_t>(it - cdf_.begin()) + 1;
}

double ZipfDistribution::probability(uint64_t rank) const {
  if (rank == 0 || rank > n_) return 0;
  return rank == 1 ? cdf_[0] : cdf_[rank - 1] - cdf_[rank - 2];
}

uint64_t zipf_sample(Rng& rng, uint64_t n_items, double theta) {
  return ZipfDistribution(n_items, theta).sample(rng);
}

}  // namespace lsmjoin::workload
