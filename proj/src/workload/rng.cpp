#include "lsmjoin/workload/rng.hpp"

#include "lsmjoin/common/error.hpp"

namespace lsmjoin::workload {

uint64_t Rng::uniform(uint64_t n) {
  if (n == 0) throw ParameterError("uniform draw over an empty range");
  // Largest multiple of n representable; draws above it are rejected.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % n;
}

}  // namespace lsmjoin::workload
