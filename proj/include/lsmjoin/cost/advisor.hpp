#pragma once

#include <string>
#include <vector>

#include "lsmjoin/cost/cost_model.hpp"

namespace lsmjoin::cost {

struct WorkloadDescriptor {
  CostParams r;
  CostParams s;
  bool primary = true;  // S keyed by the join attribute
  double join_frequency = 1;
  // Only index-free methods are candidates.
  bool no_indexes = false;
};

struct Advice {
  join::JoinMethod method;
  double build = 0;  // per join, i.e. amortized over the join frequency
  double join = 0;
  double total = 0;
  bool discouraged = false;
  std::string rationale;
};

// Theta at which skew rules kick in.
inline constexpr double kHighSkew = 0.5;

// Ranks applicable methods by build/f + join. Under high skew, Synchronous
// Eager indexes (posting lists grow without bound) and Validation INLJ
// (every hot candidate is validated) are ranked after everything else.
std::vector<Advice> advise(const WorkloadDescriptor& workload);

}  // namespace lsmjoin::cost
