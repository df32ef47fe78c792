#include "lsmjoin/workload/generator.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <algorithm>
#include <unordered_map>

#include "lsmjoin/common/coding.hpp"
#include "lsmjoin/common/error.hpp"
#include "lsmjoin/workload/rng.hpp"
#include "lsmjoin/workload/zipf.hpp"

namespace lsmjoin::workload {

namespace {

constexpr size_t kKeyBytes = 10;

// Payload length that makes `pk -> attr\0payload` encode to at most e bytes
// (exactly e except at a varint width boundary).
size_t payload_length(uint32_t e) {
  const size_t fixed = varint_length(kKeyBytes) + kKeyBytes + 8;
  if (e < fixed + 1 + kKeyBytes + 1) throw ParameterError("entry_size too small for 10-byte keys");
  size_t vlen = e - fixed - 1;
  while (varint_length(vlen) + vlen + fixed > e) --vlen;
  return vlen - kKeyBytes - 1;
}

uint64_t round_u(double x) { return static_cast<uint64_t>(std::llround(x)); }

std::string make_payload(Rng& rng, size_t len) {
  std::string p(len, 'a');
  uint64_t bits = 0;
  for (size_t i = 0; i < len; ++i) {
    if (i % 12 == 0) bits = rng.next();
    p[i] = static_cast<char>('a' + bits % 26);
    bits /= 26;
  }
  return p;
}

// Draws attribute-value indices into a side's domain.
class AttrDrawer {
 public:
  AttrDrawer(const WorkloadSpec& spec, uint64_t domain)
      : domain_(domain), balanced_(spec.distribution == Distribution::kUniform) {
    if (!balanced_ && domain > 0) zipf_.emplace(domain, spec.theta);
  }

  // Final versions: uniform is an exact round-robin, then shuffled.
  std::vector<uint64_t> finals(Rng& rng, uint64_t count) const {
    std::vector<uint64_t> out(count);
    for (uint64_t i = 0; i < count; ++i) out[i] = balanced_ ? i % domain_ : zipf_->sample(rng) - 1;
    if (balanced_) rng.shuffle(out);
    return out;
  }

  uint64_t one(Rng& rng) const { return balanced_ ? rng.uniform(domain_) : zipf_->sample(rng) - 1; }

 private:
  uint64_t domain_;
  bool balanced_;
  std::optional<ZipfDistribution> zipf_;
};

// Emits n updates over `final_attrs.size()` keys; superseded versions come
// first in a random interleaving and carry random attributes.
void emit_side(Rng& rng, const WorkloadSpec& spec, Table table, uint64_t n,
               const std::vector<std::string>& pks, const std::vector<std::string>& final_attrs,
               const std::function<std::string(Rng&, size_t)>& stale_attr, UpdateStream& out) {
  const size_t u = pks.size();
  std::vector<uint32_t> tokens;
  tokens.reserve(n);
  for (size_t i = 0; i < u; ++i) tokens.push_back(static_cast<uint32_t>(i));
  for (uint64_t i = u; i < n; ++i) tokens.push_back(static_cast<uint32_t>(rng.uniform(u)));
  rng.shuffle(tokens);

  std::vector<uint32_t> remaining(u, 0);
  for (uint32_t t : tokens) ++remaining[t];
  const size_t plen = payload_length(spec.entry_size);
  out.reserve(out.size() + n);
  for (uint32_t t : tokens) {
    Update up;
    up.table = table;
    up.pk = pks[t];
    up.attr = --remaining[t] == 0 ? final_attrs[t] : stale_attr(rng, t);
    up.payload = make_payload(rng, plen);
    out.push_back(std::move(up));
  }
}

}  // namespace

std::string format_key(uint64_t id) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%010llu", static_cast<unsigned long long>(id));
  return std::string(buf);
}

void WorkloadSpec::validate() const {
  auto fail = [](const std::string& m) { throw ParameterError("workload: " + m); };
  payload_length(entry_size);
  if (!(c_r >= 1) || !(c_s >= 1)) fail("updates per key must be >= 1");
  if (!(d_r >= 1) || !(d_s >= 1)) fail("duplication must be >= 1");
  if (!(eps_r >= 0 && eps_r <= 1) || !(eps_s >= 0 && eps_s <= 1)) fail("matching rate must be in [0,1]");
  if (!(theta >= 0) || !std::isfinite(theta)) fail("theta must be >= 0");
  if (join_frequency == 0) fail("join_frequency must be >= 1");
  if (primary && d_s != 1) fail("d_s must be 1 when S is keyed by its join attribute");
  if (n_r > UINT32_MAX || n_s > UINT32_MAX) fail("stream too large");
}

Workload generate(const WorkloadSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);

  const uint64_t u_r = spec.n_r ? std::max<uint64_t>(1, round_u(spec.n_r / spec.c_r)) : 0;
  const uint64_t u_s = spec.n_s ? std::max<uint64_t>(1, round_u(spec.n_s / spec.c_s)) : 0;
  if ((u_r && spec.d_r > static_cast<double>(u_r)) || (u_s && spec.d_s > static_cast<double>(u_s)))
    throw ParameterError("workload: duplication exceeds the number of distinct keys");

  // Target domain sizes, then K shared values satisfying both matching rates.
  const uint64_t dom_r0 = u_r ? std::max<uint64_t>(1, round_u(u_r / spec.d_r)) : 0;
  const uint64_t dom_s0 = spec.primary ? u_s : (u_s ? std::max<uint64_t>(1, round_u(u_s / spec.d_s)) : 0);
  const uint64_t k = std::min(round_u(spec.eps_r * dom_r0), round_u(spec.eps_s * dom_s0));
  uint64_t dom_r = dom_r0, dom_s = dom_s0;
  if (k > 0) {
    dom_r = std::clamp<uint64_t>(round_u(k / spec.eps_r), k, dom_r0);
    if (!spec.primary) dom_s = std::clamp<uint64_t>(round_u(k / spec.eps_s), k, dom_s0);
  }

  // Value ids: [0,k) shared, [k,dom_r) R-only, then S-only. Their key strings
  // are a random permutation so the sub-domains interleave in key order.
  const uint64_t universe = dom_r + dom_s - k;
  std::vector<uint64_t> label(universe);
  for (uint64_t i = 0; i < universe; ++i) label[i] = i;
  rng.shuffle(label);
  // Rank order within each side's domain is random too, so hot Zipf values
  // are not systematically shared or private.
  std::vector<uint64_t> r_domain(dom_r), s_domain(dom_s);
  for (uint64_t i = 0; i < dom_r; ++i) r_domain[i] = label[i];
  for (uint64_t i = 0; i < dom_s; ++i) s_domain[i] = label[i < k ? i : dom_r + (i - k)];
  rng.shuffle(r_domain);
  rng.shuffle(s_domain);

  Workload w;
  {
    AttrDrawer draw(spec, dom_r);
    std::vector<std::string> pks(u_r), attrs(u_r);
    const auto finals = draw.finals(rng, u_r);
    for (uint64_t i = 0; i < u_r; ++i) {
      pks[i] = format_key(i);
      attrs[i] = format_key(r_domain[finals[i]]);
    }
    auto stale = [&](Rng& g, size_t) { return format_key(r_domain[draw.one(g)]); };
    emit_side(rng, spec, Table::kR, spec.n_r, pks, attrs, stale, w.r);
  }
  {
    std::vector<std::string> pks(u_s), attrs(u_s);
    if (spec.primary) {
      for (uint64_t i = 0; i < u_s; ++i) pks[i] = attrs[i] = format_key(s_domain[i]);
      auto stale = [&](Rng&, size_t t) { return attrs[t]; };
      emit_side(rng, spec, Table::kS, spec.n_s, pks, attrs, stale, w.s);
    } else {
      AttrDrawer draw(spec, dom_s);
      const auto finals = draw.finals(rng, u_s);
      for (uint64_t i = 0; i < u_s; ++i) {
        pks[i] = format_key(i);
        attrs[i] = format_key(s_domain[finals[i]]);
      }
      auto stale = [&](Rng& g, size_t) { return format_key(s_domain[draw.one(g)]); };
      emit_side(rng, spec, Table::kS, spec.n_s, pks, attrs, stale, w.s);
    }
  }

  w.realized = measure_stats(w.r, w.s);
  w.oracle = oracle_join(w.r, w.s);
  return w;
}

OracleResult oracle_join(const UpdateStream& r, const UpdateStream& s) {
  std::unordered_map<std::string, std::string> r_final, s_final;
  for (const auto& u : r) r_final[u.pk] = u.attr;
  for (const auto& u : s) s_final[u.pk] = u.attr;
  std::unordered_map<std::string, std::vector<const std::string*>> by_attr;
  for (const auto& [pk, attr] : s_final) by_attr[attr].push_back(&pk);

  OracleResult out;
  std::string canon;
  for (const auto& [pk, attr] : r_final) {
    auto it = by_attr.find(attr);
    if (it == by_attr.end()) continue;
    for (const std::string* spk : it->second) {
      canon.assign(attr);
      canon.push_back('\0');
      canon.append(pk);
      canon.push_back('\0');
      canon.append(*spk);
      out.digest.add(canon);
      ++out.rows;
    }
  }
  return out;
}

}  // namespace lsmjoin::workload
