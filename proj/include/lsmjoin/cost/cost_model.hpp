#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lsmjoin/index/index_config.hpp"
#include "lsmjoin/join/join_method.hpp"

namespace lsmjoin::cost {

// Costs are in block I/Os with every O(.) constant taken as 1.

// One table's shape. n is the number of live records (distinct primary keys);
// updates counts every write, so c = updates / n.
struct CostParams {
  double n = 0;
  double updates = 0;
  double e = 64;            // data entry bytes
  double key_bytes = 10;    // primary key and join attribute width
  double block = 4096;      // B
  double buffer = 16 << 20; // M
  double size_ratio = 10;   // T
  double bloom_bits = 10;
  double eps = 1;  // fraction of records with a join partner
  double d = 1;    // records per join-attribute value
  double skew = 0; // Zipf theta; > 0 means no closed-form result size

  double p() const;
  double c() const { return n > 0 ? updates / n : 1; }
  // Data-tree levels.
  double levels() const;
  // Throws ParameterError.
  void validate() const;
};

struct CostEstimate {
  double io_units = 0;
  std::vector<std::pair<std::string, double>> breakdown;

  void add(std::string term, double units);
  // Name of the largest term, empty when there are none.
  std::string dominant() const;
};

// ceil(log_T(N·e/M)), 0 when everything fits in the buffer.
double levels(double n, double e, double m, double t);
// 0.6185^bits, the false positive rate of a Bloom filter with optimal k.
double bloom_fpr(double bits_per_key);

double update_cost(double l, double t, double e, double b);
double z0(double l, double p);
double z1(double l, double p, double e, double b);
double range_seek(double l);
double range_read(double d, double e, double b);

// Shape of a secondary index over one table.
struct IndexShape {
  double entries = 0;     // N'
  double entry_size = 0;  // e'
  double levels = 0;      // L'
};
IndexShape index_shape(const index::IndexConfig& config, const CostParams& table);

struct IndexCost {
  double z0 = 0;
  double z1 = 0;
  double update = 0;
};
IndexCost index_cost(const index::IndexConfig& config, const CostParams& table);

// r is the outer (left) table, s the inner (right) one.
CostEstimate join_cost(const join::JoinMethod& method, const CostParams& r, const CostParams& s);
// Index maintenance over every update to the indexed sides.
CostEstimate build_cost(const join::JoinMethod& method, const CostParams& r, const CostParams& s);
// Bytes, summing the D(.) terms of the method's space column.
double space_estimate(const join::JoinMethod& method, const CostParams& r, const CostParams& s);

// n_R·eps_R·d_S, or n_R·eps_R when S is keyed by the join attribute.
// nullopt for skewed inputs: there is no closed form.
std::optional<double> expected_result_rows(const CostParams& r, const CostParams& s, bool primary);

}  // namespace lsmjoin::cost
