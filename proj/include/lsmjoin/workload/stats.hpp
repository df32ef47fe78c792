#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace lsmjoin::workload {

struct Update;

// Realized distribution properties, computed on the final version of every key.
struct DatasetStats {
  uint64_t n_r = 0, n_s = 0;  // updates
  uint64_t u_r = 0, u_s = 0;  // distinct primary keys
  double c_r = 0, c_s = 0;
  double d_r = 0, d_s = 0;
  double eps_r = 0, eps_s = 0;
  double theta_r = 0, theta_s = 0;  // fitted Zipf exponents
};

DatasetStats measure_stats(const std::vector<Update>& r, const std::vector<Update>& s);

// Least-squares slope of log(frequency) against log(rank), negated, over the
// ranks whose frequency is at least `min_count`. Counts need not be sorted.
double fit_zipf_theta(std::vector<uint64_t> counts, uint64_t min_count = 10);

}  // namespace lsmjoin::workload
