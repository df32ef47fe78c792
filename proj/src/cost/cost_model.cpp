#include "lsmjoin/cost/cost_model.hpp"

#include <algorithm>
#include <cmath>

#include "lsmjoin/common/error.hpp"

namespace lsmjoin::cost {

using index::IndexConfig;
using index::IndexKind;
using join::Algorithm;
using join::JoinMethod;
using join::Scenario;

double levels(double n, double e, double m, double t) {
  if (n <= 0 || n * e <= m) return 0;
  // Guard against log(x)/log(T) landing a hair above an exact power.
  const double raw = std::log(n * e / m) / std::log(t);
  return std::max(0.0, std::ceil(raw - 1e-9));
}

double bloom_fpr(double bits_per_key) {
  if (bits_per_key <= 0) return 1.0;
  return std::clamp(std::pow(0.6185, bits_per_key), 0.0, 1.0);
}

double update_cost(double l, double t, double e, double b) { return l * t * e / b; }
double z0(double l, double p) { return l * p; }
double z1(double l, double p, double e, double b) { return l * p + std::ceil(e / b); }
double range_seek(double l) { return l; }
double range_read(double d, double e, double b) { return d * e / b; }

double CostParams::p() const { return bloom_fpr(bloom_bits); }
double CostParams::levels() const { return cost::levels(n, e, buffer, size_ratio); }

void CostParams::validate() const {
  auto fail = [](const std::string& m) { throw ParameterError("cost params: " + m); };
  if (!(n >= 0) || !(updates >= n)) fail("need 0 <= n <= updates");
  if (!(e > 0) || !(block > 0) || !(buffer > 0)) fail("sizes must be positive");
  if (!(size_ratio >= 2)) fail("size ratio must be >= 2");
  if (!(bloom_bits >= 0)) fail("bloom bits must be >= 0");
  if (!(eps >= 0 && eps <= 1)) fail("matching rate must be in [0,1]");
  if (!(d >= 1)) fail("duplication must be >= 1");
  if (!(skew >= 0)) fail("skew must be >= 0");
}

void CostEstimate::add(std::string term, double units) {
  io_units += units;
  breakdown.emplace_back(std::move(term), units);
}

std::string CostEstimate::dominant() const {
  auto it = std::max_element(breakdown.begin(), breakdown.end(),
                             [](const auto& a, const auto& b) { return a.second < b.second; });
  return it == breakdown.end() ? std::string() : it->first;
}

IndexShape index_shape(const IndexConfig& config, const CostParams& t) {
  IndexShape s;
  // Validation never removes superseded postings.
  s.entries = config.validation() ? t.updates : t.n;
  // Non-covering: attribute + primary key + record framing. Covering entries
  // carry the payload and come out the size of a data record.
  s.entry_size = config.covering() ? t.e : 2 * t.key_bytes + 11;
  s.levels = levels(s.entries, s.entry_size, t.buffer, t.size_ratio);
  return s;
}

IndexCost index_cost(const IndexConfig& config, const CostParams& t) {
  const IndexShape ix = index_shape(config, t);
  const double l = t.levels(), li = ix.levels, p = t.p(), b = t.block, tr = t.size_ratio;
  const double e = t.e, ei = ix.entry_size;
  // Validation candidates include the superseded postings of every key.
  const double d_valid = t.d * t.c();

  IndexCost c;
  c.z0 = z0(li, p);
  const double write = update_cost(li, tr, ei, b);
  const double data_check = d_valid * z1(l, p, e, b);
  if (!config.validation()) {
    switch (config.kind) {
      case IndexKind::kEager:
        c.z1 = z1(li, p, ei, b);
        c.update = z1(l, p, e, b) + z1(li, p, ei, b) + write;
        break;
      case IndexKind::kLazy:
        c.z1 = li * std::ceil(ei / b);
        c.update = z1(l, p, e, b) + write;
        break;
      case IndexKind::kComposite:
        c.z1 = range_seek(li) + range_read(t.d, ei, b);
        c.update = z1(l, p, e, b) + write;
        break;
    }
  } else {
    switch (config.kind) {
      case IndexKind::kEager:
        c.z1 = data_check + z1(li, p, ei, b);
        c.update = z1(li, p, ei, b) + write;
        break;
      case IndexKind::kLazy:
        c.z1 = data_check + li * std::ceil(ei / b);
        c.update = write;
        break;
      case IndexKind::kComposite:
        c.z1 = data_check + range_seek(li) + range_read(d_valid, ei, b);
        c.update = write;
        break;
    }
  }
  return c;
}

namespace {

double blocks(const CostParams& t) { return t.n * t.e / t.block; }

double index_blocks(const IndexConfig& config, const CostParams& t) {
  const IndexShape ix = index_shape(config, t);
  return ix.entries * ix.entry_size / t.block;
}

// Streaming a Validation index checks each candidate that meets a partner
// against the data table.
void add_stream_validation(CostEstimate& est, const std::string& side, const IndexConfig& config,
                           const CostParams& t) {
  if (!config.validation()) return;
  const IndexShape ix = index_shape(config, t);
  est.add("validate_" + side, t.eps * ix.entries * z1(t.levels(), t.p(), t.e, t.block));
}

}  // namespace

CostEstimate join_cost(const JoinMethod& m, const CostParams& r, const CostParams& s) {
  m.check();
  CostEstimate est;
  const auto ri = m.r_index(), si = m.s_index();
  const double br = blocks(r), bs = blocks(s);

  switch (m.algorithm) {
    case Algorithm::kINLJ: {
      if (ri) {
        est.add("scan_R'", index_blocks(*ri, r));
        add_stream_validation(est, "R", *ri, r);
      } else {
        est.add("scan_R", br);
      }
      if (m.scenario == Scenario::kN) {
        est.add("probe_S", r.n * bs);
        break;
      }
      double zero, one;
      if (si) {
        const IndexCost ic = index_cost(*si, s);
        zero = ic.z0;
        one = ic.z1;
      } else {
        const double l = s.levels();
        zero = z0(l, s.p());
        one = z1(l, s.p(), s.e, s.block);
      }
      est.add("probe_empty", r.n * (1 - r.eps) * zero);
      est.add("probe_hit", r.n * r.eps * one);
      break;
    }
    case Algorithm::kSJ:
      if (si) {
        est.add("scan_S'", index_blocks(*si, s));
        add_stream_validation(est, "S", *si, s);
      } else if (m.requires_primary_s()) {
        est.add("scan_S", bs);
      } else {
        est.add("sort_S", 5 * bs);
      }
      if (ri) {
        est.add("scan_R'", index_blocks(*ri, r));
        add_stream_validation(est, "R", *ri, r);
      } else {
        est.add("sort_R", 5 * br);
      }
      break;
    case Algorithm::kHJ:
      est.add("partition_S", 3 * bs);
      est.add("partition_R", 3 * br);
      break;
  }
  return est;
}

CostEstimate build_cost(const JoinMethod& m, const CostParams& r, const CostParams& s) {
  m.check();
  CostEstimate est;
  if (auto ri = m.r_index()) est.add("index_R", r.updates * index_cost(*ri, r).update);
  if (auto si = m.s_index()) est.add("index_S", s.updates * index_cost(*si, s).update);
  return est;
}

double space_estimate(const JoinMethod& m, const CostParams& r, const CostParams& s) {
  m.check();
  const double dr = r.n * r.e, ds = s.n * s.e;
  auto di = [](const std::optional<IndexConfig>& c, const CostParams& t) {
    if (!c) return 0.0;
    const IndexShape ix = index_shape(*c, t);
    return ix.entries * ix.entry_size;
  };
  const double dri = di(m.r_index(), r), dsi = di(m.s_index(), s);
  switch (m.algorithm) {
    case Algorithm::kINLJ:
      return dr + ds + dri + dsi;
    case Algorithm::kSJ:
      switch (m.scenario) {
        case Scenario::kP:
        case Scenario::kN:
          return 2 * dr + 2 * ds;
        case Scenario::kPS:
          return dr + 2 * ds + dri;
        case Scenario::kNS:
          return 2 * dr + ds + dsi;
        case Scenario::kSS:
          return dr + ds + dri + dsi;
      }
      break;
    case Algorithm::kHJ:
      return 2 * dr + 2 * ds;
  }
  return 0;
}

std::optional<double> expected_result_rows(const CostParams& r, const CostParams& s, bool primary) {
  if (r.skew > 0 || s.skew > 0) return std::nullopt;
  return primary ? r.n * r.eps : r.n * r.eps * s.d;
}

}  // namespace lsmjoin::cost
