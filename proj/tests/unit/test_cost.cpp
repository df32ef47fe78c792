#include <gtest/gtest.h>

#include <cmath>

#include "lsmjoin/common/error.hpp"
#include "lsmjoin/cost/advisor.hpp"
#include "lsmjoin/cost/cost_model.hpp"
#include "lsmjoin/workload/generator.hpp"

using namespace lsmjoin;
using namespace lsmjoin::cost;
using index::IndexConfig;
using join::JoinMethod;

namespace {

// 10^7 tuples of 64 bytes, 16 MiB buffer, T = 10, 10-bit Bloom filters.
CostParams running_example(double eps = 0.01) {
  CostParams p;
  p.n = p.updates = 1e7;
  p.e = 64;
  p.block = 4096;
  p.buffer = 16 << 20;
  p.size_ratio = 10;
  p.bloom_bits = 10;
  p.eps = eps;
  return p;
}

double term(const CostEstimate& est, const std::string& name) {
  for (const auto& [n, v] : est.breakdown)
    if (n == name) return v;
  return NAN;
}

}  // namespace

TEST(Levels, Examples) {
  EXPECT_EQ(levels(100, 64, 1 << 20, 10), 0);
  EXPECT_EQ(levels(1e7, 64, 16 << 20, 10), 2);
  EXPECT_EQ(levels(1e6, 16, 1 << 20, 4), 2);
  // Exactly one buffer's worth times T: one level, not two.
  EXPECT_EQ(levels(10 * 1024, 1024, 1 << 20, 10), 1);
}

TEST(Bloom, Fpr) {
  EXPECT_DOUBLE_EQ(bloom_fpr(0), 1.0);
  EXPECT_NEAR(bloom_fpr(10), 0.0082, 0.0001);
  for (int b = 0; b < 20; ++b) EXPECT_GT(bloom_fpr(b), bloom_fpr(b + 1));
}

TEST(LsmCosts, Examples) {
  EXPECT_NEAR(z1(3, 0.01, 64, 4096), 1.03, 1e-12);
  EXPECT_EQ(z0(0, 0.5), 0);
  EXPECT_DOUBLE_EQ(update_cost(2, 10, 64, 4096), 0.3125);
  EXPECT_EQ(range_seek(3), 3);
  EXPECT_DOUBLE_EQ(range_read(4, 1024, 4096), 1.0);
}

TEST(IndexCost, EmptyLookupIdenticalAcrossVariants) {
  const CostParams p = running_example();
  for (auto coverage : {index::Coverage::kCovering, index::Coverage::kNonCovering}) {
    std::optional<double> first;
    for (const auto& cfg : IndexConfig::all()) {
      if (cfg.coverage != coverage) continue;
      const double l = index_shape(cfg, p).levels;
      const double z = index_cost(cfg, p).z0;
      EXPECT_DOUBLE_EQ(z, l * p.p());
      if (!first) first = z;
      EXPECT_DOUBLE_EQ(z, *first) << cfg.to_string();
    }
  }
}

TEST(IndexCost, ValidationLazyCheaperToUpdate) {
  for (double bits : {1.0, 5.0, 10.0})
    for (double e : {8.0, 64.0, 4096.0}) {
      CostParams p = running_example();
      p.bloom_bits = bits;
      p.e = e;
      for (auto cov : {index::Coverage::kCovering, index::Coverage::kNonCovering}) {
        const auto v = index_cost({index::IndexKind::kLazy, index::Strategy::kValidation, cov}, p);
        const auto s = index_cost({index::IndexKind::kLazy, index::Strategy::kSynchronous, cov}, p);
        EXPECT_LT(v.update, s.update);
      }
    }
}

TEST(IndexCost, ValidationEagerWithoutDuplicates) {
  CostParams p = running_example();
  p.d = 1;
  const IndexConfig cfg{index::IndexKind::kEager, index::Strategy::kValidation, index::Coverage::kNonCovering};
  const auto shape = index_shape(cfg, p);
  const double want = (p.levels() * p.p() + std::ceil(p.e / p.block)) +
                      (shape.levels * p.p() + std::ceil(shape.entry_size / p.block));
  EXPECT_DOUBLE_EQ(index_cost(cfg, p).z1, want);
}

TEST(IndexCost, SynchronousEagerUpdateCell) {
  const CostParams p = running_example();
  const IndexConfig cfg{index::IndexKind::kEager, index::Strategy::kSynchronous, index::Coverage::kNonCovering};
  const auto ix = index_shape(cfg, p);
  EXPECT_EQ(ix.entry_size, 31);
  const double l = p.levels(), li = ix.levels, fp = p.p();
  const double want = (l * fp + 1) + (li * fp + 1) + li * 10 * 31 / 4096.0;
  EXPECT_DOUBLE_EQ(index_cost(cfg, p).update, want);
}

TEST(JoinCost, EveryMethodFiniteAndSummed) {
  CostParams r = running_example(0.3), s = running_example(0.7);
  r.d = 3;
  s.updates = 2e7;
  for (const auto& m : join::all_methods()) {
    for (const CostEstimate& est : {join_cost(m, r, s), build_cost(m, r, s)}) {
      double sum = 0;
      for (const auto& [name, v] : est.breakdown) {
        EXPECT_TRUE(std::isfinite(v)) << m.id() << " " << name;
        EXPECT_GE(v, 0) << m.id() << " " << name;
        sum += v;
      }
      EXPECT_DOUBLE_EQ(est.io_units, sum) << m.id();
    }
    const double space = space_estimate(m, r, s);
    EXPECT_TRUE(std::isfinite(space));
    EXPECT_GT(space, 0);
  }
}

TEST(JoinCost, RunningExampleOrdering) {
  const CostParams r = running_example(), s = running_example();
  const double inlj = join_cost(JoinMethod::parse("INLJ-P"), r, s).io_units;
  const double sj = join_cost(JoinMethod::parse("SJ-P"), r, s).io_units;
  const double hj = join_cost(JoinMethod::parse("HJ-P"), r, s).io_units;
  EXPECT_LT(inlj, sj);
  EXPECT_LT(inlj, hj);
  EXPECT_NEAR(sj / hj, 1.0, 0.05);
}

TEST(JoinCost, SmallOuterEntriesFavourSortMerge) {
  const CostParams s = running_example();
  CostParams r = running_example();
  const auto inlj_m = JoinMethod::parse("INLJ-P"), sj_m = JoinMethod::parse("SJ-P");
  const auto before = join_cost(inlj_m, r, s);
  r.e = 4;
  const auto after = join_cost(inlj_m, r, s);
  EXPECT_LT(join_cost(sj_m, r, s).io_units, after.io_units);
  // The probe terms depend only on S: the ceiling keeps them unchanged.
  EXPECT_DOUBLE_EQ(term(before, "probe_hit"), term(after, "probe_hit"));
  EXPECT_DOUBLE_EQ(term(before, "probe_empty"), term(after, "probe_empty"));
}

TEST(JoinCost, NoMatchesProbeOnlyEmpty) {
  const CostParams r = running_example(0.0), s = running_example();
  const auto est = join_cost(JoinMethod::parse("INLJ-P"), r, s);
  EXPECT_DOUBLE_EQ(term(est, "probe_empty"), r.n * z0(s.levels(), s.p()));
  EXPECT_DOUBLE_EQ(term(est, "probe_hit"), 0);
}

TEST(JoinCost, TableRows) {
  const CostParams r = running_example(), s = running_example();
  const double br = 1e7 * 64 / 4096.0;
  EXPECT_DOUBLE_EQ(join_cost(JoinMethod::parse("SJ-N"), r, s).io_units, 10 * br);
  EXPECT_DOUBLE_EQ(join_cost(JoinMethod::parse("HJ-N"), r, s).io_units, 6 * br);
  EXPECT_DOUBLE_EQ(join_cost(JoinMethod::parse("SJ-P"), r, s).io_units, 6 * br);
  EXPECT_DOUBLE_EQ(join_cost(JoinMethod::parse("INLJ-N"), r, s).io_units, br + 1e7 * br);
  // Synchronous SJ-SS streams both index trees and nothing else.
  const auto ss = join_cost(JoinMethod::parse("SJ-SS:S-Comp"), r, s);
  EXPECT_DOUBLE_EQ(ss.io_units, 2 * 1e7 * 31 / 4096.0);
}

TEST(Space, Columns) {
  const CostParams r = running_example(), s = running_example();
  const double d = 1e7 * 64;
  EXPECT_DOUBLE_EQ(space_estimate(JoinMethod::parse("INLJ-N"), r, s), 2 * d);
  EXPECT_DOUBLE_EQ(space_estimate(JoinMethod::parse("SJ-N"), r, s), 4 * d);
  EXPECT_DOUBLE_EQ(space_estimate(JoinMethod::parse("INLJ-NS:S-Comp"), r, s), 2 * d + 1e7 * 31);
  CostParams empty = r;
  empty.n = empty.updates = 0;
  EXPECT_DOUBLE_EQ(space_estimate(JoinMethod::parse("HJ-N"), empty, empty), 0);
}

TEST(ResultRows, ClosedForm) {
  CostParams r, s;
  r.n = r.updates = 100;
  r.eps = 0;
  EXPECT_EQ(*expected_result_rows(r, s, false), 0);
  r.eps = 0.5;
  s.d = 2;
  EXPECT_DOUBLE_EQ(*expected_result_rows(r, s, false), 100);
  EXPECT_DOUBLE_EQ(*expected_result_rows(r, s, true), 50);
  s.skew = 0.8;
  EXPECT_FALSE(expected_result_rows(r, s, false).has_value());
}

TEST(ResultRows, AgreesWithGeneratedOracle) {
  for (bool primary : {true, false})
    for (double eps : {0.25, 0.5, 1.0}) {
      workload::WorkloadSpec spec;
      spec.n_r = spec.n_s = 20000;
      spec.primary = primary;
      spec.d_r = 2;
      spec.d_s = primary ? 1 : 2;
      spec.eps_r = spec.eps_s = eps;
      const auto w = workload::generate(spec);
      const auto& st = w.realized;
      CostParams r, s;
      r.n = r.updates = static_cast<double>(st.u_r);
      r.eps = st.eps_r;
      r.d = st.d_r;
      s.n = s.updates = static_cast<double>(st.u_s);
      s.eps = st.eps_s;
      s.d = st.d_s;
      const double want = static_cast<double>(w.oracle.rows);
      const double got = *expected_result_rows(r, s, primary);
      EXPECT_LT(std::fabs(got - want) / want, 0.15) << primary << " " << eps;
    }
}

TEST(Advisor, FrequentJoinsWithSmallEntriesPickDualIndexes) {
  WorkloadDescriptor w;
  w.r = running_example(0.5);
  w.s = running_example(0.5);
  w.join_frequency = 32;
  const auto ranked = advise(w);
  ASSERT_FALSE(ranked.empty());
  const auto sc = ranked.front().method.scenario;
  EXPECT_TRUE(ranked.front().method.algorithm == join::Algorithm::kSJ &&
              (sc == join::Scenario::kPS || sc == join::Scenario::kSS))
      << ranked.front().method.id();
}

TEST(Advisor, WithoutIndexesHashBeatsSort) {
  WorkloadDescriptor w;
  w.r = running_example(0.5);
  w.s = running_example(0.5);
  w.no_indexes = true;
  const auto ranked = advise(w);
  auto pos = [&](const std::string& id) {
    for (size_t i = 0; i < ranked.size(); ++i)
      if (ranked[i].method.id() == id) return i;
    return ranked.size();
  };
  EXPECT_LT(pos("HJ-P"), pos("SJ-N"));
  EXPECT_LT(pos("HJ-N"), pos("SJ-N"));
  for (const auto& a : ranked) EXPECT_FALSE(a.method.uses_secondary_index());
}

TEST(Advisor, LargeEntriesPickNestedLoop) {
  WorkloadDescriptor w;
  w.r = running_example(0.5);
  w.s = running_example(0.5);
  w.r.e = w.s.e = 4096;
  const auto ranked = advise(w);
  EXPECT_EQ(ranked.front().method.algorithm, join::Algorithm::kINLJ) << ranked.front().method.id();
  EXPECT_FALSE(ranked.front().rationale.empty());
}

TEST(Advisor, SkewDemotesEagerSynchronousAndValidatedNestedLoops) {
  WorkloadDescriptor w;
  w.r = running_example(0.5);
  w.s = running_example(0.5);
  w.r.skew = w.s.skew = 0.9;
  w.primary = false;
  const auto ranked = advise(w);
  bool seen_discouraged = false;
  for (const auto& a : ranked) {
    const auto cfg = a.method.r_index() ? a.method.r_index() : a.method.s_index();
    const bool bad = cfg && ((!cfg->validation() && cfg->kind == index::IndexKind::kEager) ||
                             (cfg->validation() && a.method.algorithm == join::Algorithm::kINLJ));
    EXPECT_EQ(a.discouraged, bad) << a.method.id();
    if (bad) seen_discouraged = true;
    else EXPECT_FALSE(seen_discouraged) << a.method.id() << " ranked after a discouraged method";
  }
}

TEST(Advisor, InvariantToUniformScaling) {
  WorkloadDescriptor w;
  w.r = running_example(0.4);
  w.s = running_example(0.6);
  w.join_frequency = 4;
  WorkloadDescriptor big = w;
  // Doubling data and buffer keeps level counts, so every cost doubles.
  for (auto* p : {&big.r, &big.s}) {
    p->n *= 2;
    p->updates *= 2;
    p->buffer *= 2;
  }
  const auto a = advise(w), b = advise(big);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].method.id(), b[i].method.id());
    EXPECT_NEAR(b[i].total / a[i].total, 2.0, 1e-9);
  }
}

TEST(Advisor, RejectsBadParams) {
  WorkloadDescriptor w;
  w.r.eps = 2;
  EXPECT_THROW(advise(w), ParameterError);
}
