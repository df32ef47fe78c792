#include "lsmjoin/cost/advisor.hpp"

#include <algorithm>
#include <cstdio>

#include "lsmjoin/common/error.hpp"

namespace lsmjoin::cost {

namespace {

std::string percent(double part, double whole) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.0f%%", whole > 0 ? 100 * part / whole : 0.0);
  return buf;
}

}  // namespace

std::vector<Advice> advise(const WorkloadDescriptor& w) {
  w.r.validate();
  w.s.validate();
  if (!(w.join_frequency >= 1)) throw ParameterError("join frequency must be >= 1");
  const bool skewed = std::max(w.r.skew, w.s.skew) >= kHighSkew;

  std::vector<Advice> out;
  for (const auto& m : join::all_methods()) {
    if (m.requires_primary_s() && !w.primary) continue;
    if (w.no_indexes && m.uses_secondary_index()) continue;
    // Quadratic; never a sensible recommendation once any index exists.
    if (m.pathological() && !w.no_indexes) continue;

    Advice a;
    a.method = m;
    const CostEstimate build = build_cost(m, w.r, w.s);
    const CostEstimate join = join_cost(m, w.r, w.s);
    a.build = build.io_units / w.join_frequency;
    a.join = join.io_units;
    a.total = a.build + a.join;

    const auto cfg = m.r_index() ? m.r_index() : m.s_index();
    if (skewed && cfg) {
      if (!cfg->validation() && cfg->kind == index::IndexKind::kEager) a.discouraged = true;
      if (cfg->validation() && m.algorithm == join::Algorithm::kINLJ) a.discouraged = true;
    }

    const bool build_dominates = a.build > a.join;
    const CostEstimate& top = build_dominates ? build : join;
    const std::string term = top.dominant();
    double term_units = 0;
    for (const auto& [name, units] : top.breakdown)
      if (name == term) term_units = units;
    if (build_dominates) term_units /= w.join_frequency;
    a.rationale = term.empty() ? "no cost terms"
                               : term + " dominates (" + percent(term_units, a.total) + " of " +
                                     (build_dominates ? "amortized build" : "join") + " cost)";
    if (w.join_frequency > 1 && build.io_units > 0)
      a.rationale += "; build amortized over " + std::to_string(static_cast<long long>(w.join_frequency)) + " joins";
    if (a.discouraged)
      a.rationale += cfg->validation() ? "; skew: every hot candidate is validated"
                                       : "; skew: hot posting lists are re-read on every update";
    out.push_back(std::move(a));
  }
  std::stable_sort(out.begin(), out.end(), [](const Advice& a, const Advice& b) {
    if (a.discouraged != b.discouraged) return !a.discouraged;
    return a.total < b.total;
  });
  return out;
}

}  // namespace lsmjoin::cost
