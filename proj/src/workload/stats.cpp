#include "lsmjoin/workload/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "lsmjoin/workload/generator.hpp"

namespace lsmjoin::workload {

namespace {

// pk -> attr of the final version.
std::unordered_map<std::string, std::string> final_state(const std::vector<Update>& stream) {
  std::unordered_map<std::string, std::string> out;
  out.reserve(stream.size());
  for (const auto& u : stream) out[u.pk] = u.attr;
  return out;
}

struct SideStats {
  uint64_t n = 0, u = 0;
  std::unordered_map<std::string, uint64_t> freq;
};

SideStats side(const std::vector<Update>& stream) {
  SideStats s;
  s.n = stream.size();
  auto fin = final_state(stream);
  s.u = fin.size();
  for (const auto& [pk, attr] : fin) ++s.freq[attr];
  return s;
}

double matched_fraction(const SideStats& a, const SideStats& b) {
  if (a.u == 0) return 0;
  uint64_t matched = 0;
  for (const auto& [attr, n] : a.freq)
    if (b.freq.count(attr)) matched += n;
  return static_cast<double>(matched) / static_cast<double>(a.u);
}

double theta_of(const SideStats& s) {
  std::vector<uint64_t> counts;
  counts.reserve(s.freq.size());
  for (const auto& [attr, n] : s.freq) counts.push_back(n);
  return fit_zipf_theta(std::move(counts));
}

}  // namespace

double fit_zipf_theta(std::vector<uint64_t> counts, uint64_t min_count) {
  std::sort(counts.begin(), counts.end(), std::greater<>());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  size_t m = 0;
  for (size_t i = 0; i < counts.size() && counts[i] >= min_count; ++i, ++m) {
    const double x = std::log(static_cast<double>(i + 1));
    const double y = std::log(static_cast<double>(counts[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  if (m < 2) return 0;
  const double denom = static_cast<double>(m) * sxx - sx * sx;
  if (denom <= 0) return 0;
  return -(static_cast<double>(m) * sxy - sx * sy) / denom;
}

DatasetStats measure_stats(const std::vector<Update>& r, const std::vector<Update>& s) {
  const SideStats a = side(r), b = side(s);
  DatasetStats st;
  st.n_r = a.n;
  st.n_s = b.n;
  st.u_r = a.u;
  st.u_s = b.u;
  auto ratio = [](uint64_t x, uint64_t y) { return y ? static_cast<double>(x) / static_cast<double>(y) : 0.0; };
  st.c_r = ratio(a.n, a.u);
  st.c_s = ratio(b.n, b.u);
  st.d_r = ratio(a.u, a.freq.size());
  st.d_s = ratio(b.u, b.freq.size());
  st.eps_r = matched_fraction(a, b);
  st.eps_s = matched_fraction(b, a);
  st.theta_r = theta_of(a);
  st.theta_s = theta_of(b);
  return st;
}

}  // namespace lsmjoin::workload
