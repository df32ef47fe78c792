#include "lsmjoin/index/index_config.hpp"

#include "lsmjoin/common/error.hpp"

namespace lsmjoin::index {

std::string_view to_string(IndexKind kind) {
  switch (kind) {
    case IndexKind::kEager:
      return "Eager";
    case IndexKind::kLazy:
      return "Lazy";
    case IndexKind::kComposite:
      return "Comp";
  }
  return "?";
}

std::string_view to_string(Strategy strategy) { return strategy == Strategy::kSynchronous ? "S" : "V"; }

std::string IndexConfig::to_string() const {
  std::string out(index::to_string(strategy));
  out += '-';
  out += index::to_string(kind);
  if (covering()) out += "-C";
  return out;
}

IndexConfig IndexConfig::parse(std::string_view name) {
  for (const auto& c : all()) {
    if (c.to_string() == name) return c;
  }
  throw ConfigError("unknown index config '" + std::string(name) + "'");
}

std::vector<IndexConfig> IndexConfig::all() {
  std::vector<IndexConfig> out;
  for (auto s : {Strategy::kSynchronous, Strategy::kValidation}) {
    for (auto k : {IndexKind::kEager, IndexKind::kLazy, IndexKind::kComposite}) {
      for (auto c : {Coverage::kNonCovering, Coverage::kCovering}) out.push_back(IndexConfig{k, s, c});
    }
  }
  return out;
}

}  // namespace lsmjoin::index
