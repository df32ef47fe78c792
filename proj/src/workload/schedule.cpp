#include "lsmjoin/workload/schedule.hpp"

#include "lsmjoin/common/error.hpp"

namespace lsmjoin::workload {

std::vector<Phase> schedule(size_t stream_size, size_t f) {
  if (f == 0) throw ParameterError("join frequency must be >= 1");
  if (stream_size == 0) {
    if (f > 1) throw ParameterError("cannot split an empty stream into several batches");
    return {Phase{0, 0}};
  }
  if (f > stream_size)
    throw ParameterError("join frequency " + std::to_string(f) + " exceeds " + std::to_string(stream_size) +
                         " updates");
  const size_t batch = stream_size / f;
  std::vector<Phase> out;
  for (size_t i = 0; i < f; ++i) out.push_back({i * batch, i + 1 == f ? stream_size : (i + 1) * batch});
  return out;
}

UpdateStream interleave(const UpdateStream& r, const UpdateStream& s) {
  UpdateStream out;
  out.reserve(r.size() + s.size());
  size_t i = 0, j = 0;
  // Take from R while its consumed share is behind its overall share.
  while (i < r.size() || j < s.size()) {
    const bool take_r = j == s.size() || (i < r.size() && i * s.size() <= j * r.size());
    out.push_back(take_r ? r[i++] : s[j++]);
  }
  return out;
}

}  // namespace lsmjoin::workload
