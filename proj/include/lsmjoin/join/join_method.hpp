#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lsmjoin/index/index_config.hpp"

namespace lsmjoin::join {

enum class Algorithm { kINLJ, kSJ, kHJ };

// Which sides carry which access path. R is the outer/left table, S the
// inner/right one.
//   P   S keyed by the join attribute (primary index), R unindexed
//   PS  S primary index, R has a secondary index R'
//   N   neither side indexed
//   NS  S has a secondary index S', R unindexed
//   SS  both sides have secondary indexes
enum class Scenario { kP, kPS, kN, kNS, kSS };

std::string_view to_string(Algorithm a);
std::string_view to_string(Scenario s);

// One join method: algorithm x scenario x index variant. Scenarios with a
// secondary index carry one IndexConfig, used for every indexed side. Ids look
// like "HJ-P", "SJ-PS:S-Comp-C", "INLJ-NS:V-Lazy".
struct JoinMethod {
  Algorithm algorithm = Algorithm::kHJ;
  Scenario scenario = Scenario::kN;
  std::optional<index::IndexConfig> index;

  std::string id() const;
  // Accepts full ids, and bare "ALG-SCEN" for indexed scenarios (defaulting
  // to S-Comp-C). Throws ConfigError.
  static JoinMethod parse(std::string_view id);

  bool uses_secondary_index() const { return scenario == Scenario::kPS || scenario == Scenario::kNS || scenario == Scenario::kSS; }
  // S must be keyed by the join attribute.
  bool requires_primary_s() const { return scenario == Scenario::kP || scenario == Scenario::kPS; }
  std::optional<index::IndexConfig> r_index() const;
  std::optional<index::IndexConfig> s_index() const;
  // Nested loop without any index: quadratic I/O.
  bool pathological() const { return algorithm == Algorithm::kINLJ && scenario == Scenario::kN; }

  // Throws ConfigError when the combination is not a defined method.
  void check() const;

  friend bool operator==(const JoinMethod&, const JoinMethod&) = default;
};

// Every defined method: 6 index-free plus 6 indexed scenarios x 12 index
// variants = 78.
std::vector<JoinMethod> all_methods();
// The 29 Synchronous methods: INLJ-P, INLJ-NS, SJ-P, SJ-PS, SJ-N, SJ-NS, SJ-SS,
// HJ-P, HJ-N, each indexed one in its three kinds x two coverages.
std::vector<JoinMethod> standard_methods();
// Parses a comma-separated list; "all" and "standard" expand.
std::vector<JoinMethod> parse_method_list(std::string_view list);

}  // namespace lsmjoin::join
