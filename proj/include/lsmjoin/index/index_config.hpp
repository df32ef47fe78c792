#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lsmjoin::index {

enum class IndexKind { kEager, kLazy, kComposite };
enum class Strategy { kSynchronous, kValidation };
enum class Coverage { kCovering, kNonCovering };

// One secondary-index variant. Rendered as "<S|V>-<Eager|Lazy|Comp>[-C]",
// e.g. "S-Comp-C" (Synchronous Composite covering) or "V-Lazy".
struct IndexConfig {
  IndexKind kind = IndexKind::kEager;
  Strategy strategy = Strategy::kSynchronous;
  Coverage coverage = Coverage::kNonCovering;

  bool covering() const { return coverage == Coverage::kCovering; }
  bool validation() const { return strategy == Strategy::kValidation; }

  std::string to_string() const;
  // Throws ConfigError on an unknown name.
  static IndexConfig parse(std::string_view name);
  // All 12 combinations, in a fixed order.
  static std::vector<IndexConfig> all();

  friend bool operator==(const IndexConfig&, const IndexConfig&) = default;
};

std::string_view to_string(IndexKind kind);
std::string_view to_string(Strategy strategy);

}  // namespace lsmjoin::index
