#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lsmjoin/common/hash.hpp"
#include "lsmjoin/workload/stats.hpp"

namespace lsmjoin::workload {

enum class Table { kR, kS };
enum class Distribution { kUniform, kZipf };

struct Update {
  Table table = Table::kR;
  std::string pk;
  std::string attr;
  std::string payload;

  friend bool operator==(const Update&, const Update&) = default;
};

using UpdateStream = std::vector<Update>;

struct WorkloadSpec {
  uint64_t n_r = 100000;  // updates to R
  uint64_t n_s = 100000;  // updates to S
  uint32_t entry_size = 64;  // encoded data-record bytes
  Distribution distribution = Distribution::kUniform;
  double theta = 0.0;
  double c_r = 1, c_s = 1;  // updates per primary key
  double d_r = 1, d_s = 1;  // records per join-attribute value
  double eps_r = 1, eps_s = 1;  // fraction of records with a join partner
  uint32_t join_frequency = 1;
  uint64_t seed = 1;
  // S is keyed by its join attribute (needed by the P and PS scenarios).
  bool primary = true;

  // Throws ParameterError.
  void validate() const;
};

struct OracleResult {
  uint64_t rows = 0;
  MultisetDigest digest;
};

struct Workload {
  UpdateStream r;
  UpdateStream s;
  DatasetStats realized;
  OracleResult oracle;
};

// Keys and attributes are 10-byte zero-padded decimals.
std::string format_key(uint64_t id);

// Matching is controlled through disjoint attribute sub-domains: K values are
// shared, the rest of each side's domain is private. K is chosen to hit both
// matching rates; when they conflict with the duplication targets the
// matching rates win and the realized duplication is reported.
Workload generate(const WorkloadSpec& spec);

// In-memory join over the final version of every key.
OracleResult oracle_join(const UpdateStream& r, const UpdateStream& s);

}  // namespace lsmjoin::workload
