#include "lsmjoin/join/join_method.hpp"

#include "lsmjoin/common/error.hpp"

namespace lsmjoin::join {

using index::Coverage;
using index::IndexConfig;
using index::IndexKind;
using index::Strategy;

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kINLJ:
      return "INLJ";
    case Algorithm::kSJ:
      return "SJ";
    case Algorithm::kHJ:
      return "HJ";
  }
  return "?";
}

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::kP:
      return "P";
    case Scenario::kPS:
      return "PS";
    case Scenario::kN:
      return "N";
    case Scenario::kNS:
      return "NS";
    case Scenario::kSS:
      return "SS";
  }
  return "?";
}

std::string JoinMethod::id() const {
  std::string out(to_string(algorithm));
  out += '-';
  out += to_string(scenario);
  if (index) {
    out += ':';
    out += index->to_string();
  }
  return out;
}

std::optional<IndexConfig> JoinMethod::r_index() const {
  if (scenario == Scenario::kPS || scenario == Scenario::kSS) return index;
  return std::nullopt;
}

std::optional<IndexConfig> JoinMethod::s_index() const {
  if (scenario == Scenario::kNS || scenario == Scenario::kSS) return index;
  return std::nullopt;
}

void JoinMethod::check() const {
  if (algorithm == Algorithm::kHJ && scenario != Scenario::kP && scenario != Scenario::kN) {
    throw ConfigError("hash join is defined for the P and N scenarios only");
  }
  if (uses_secondary_index() != index.has_value()) {
    throw ConfigError(std::string("scenario ") + std::string(to_string(scenario)) +
                      (index ? " takes no index config" : " needs an index config"));
  }
}

JoinMethod JoinMethod::parse(std::string_view id) {
  const auto colon = id.find(':');
  const std::string_view head = id.substr(0, colon);
  const auto dash = head.find('-');
  if (dash == std::string_view::npos) throw ConfigError("malformed join method '" + std::string(id) + "'");
  JoinMethod m;
  const auto alg = head.substr(0, dash);
  const auto scen = head.substr(dash + 1);
  bool found = false;
  for (auto a : {Algorithm::kINLJ, Algorithm::kSJ, Algorithm::kHJ}) {
    if (to_string(a) == alg) {
      m.algorithm = a;
      found = true;
    }
  }
  if (!found) throw ConfigError("unknown join algorithm in '" + std::string(id) + "'");
  found = false;
  for (auto s : {Scenario::kP, Scenario::kPS, Scenario::kN, Scenario::kNS, Scenario::kSS}) {
    if (to_string(s) == scen) {
      m.scenario = s;
      found = true;
    }
  }
  if (!found) throw ConfigError("unknown join scenario in '" + std::string(id) + "'");
  if (colon != std::string_view::npos) {
    m.index = IndexConfig::parse(id.substr(colon + 1));
  } else if (m.uses_secondary_index()) {
    m.index = IndexConfig{IndexKind::kComposite, Strategy::kSynchronous, Coverage::kCovering};
  }
  m.check();
  return m;
}

std::vector<JoinMethod> all_methods() {
  std::vector<JoinMethod> out;
  for (auto a : {Algorithm::kINLJ, Algorithm::kSJ, Algorithm::kHJ}) {
    for (auto s : {Scenario::kP, Scenario::kPS, Scenario::kN, Scenario::kNS, Scenario::kSS}) {
      JoinMethod m{a, s, std::nullopt};
      if (a == Algorithm::kHJ && s != Scenario::kP && s != Scenario::kN) continue;
      if (!m.uses_secondary_index()) {
        out.push_back(m);
        continue;
      }
      for (const auto& c : IndexConfig::all()) {
        m.index = c;
        out.push_back(m);
      }
    }
  }
  return out;
}

std::vector<JoinMethod> standard_methods() {
  const std::pair<Algorithm, Scenario> rows[] = {
      {Algorithm::kINLJ, Scenario::kP}, {Algorithm::kINLJ, Scenario::kNS}, {Algorithm::kSJ, Scenario::kP},
      {Algorithm::kSJ, Scenario::kPS},  {Algorithm::kSJ, Scenario::kN},    {Algorithm::kSJ, Scenario::kNS},
      {Algorithm::kSJ, Scenario::kSS},  {Algorithm::kHJ, Scenario::kP},    {Algorithm::kHJ, Scenario::kN},
  };
  std::vector<JoinMethod> out;
  for (auto [a, s] : rows) {
    JoinMethod m{a, s, std::nullopt};
    if (!m.uses_secondary_index()) {
      out.push_back(m);
      continue;
    }
    for (auto k : {IndexKind::kEager, IndexKind::kLazy, IndexKind::kComposite}) {
      for (auto c : {Coverage::kNonCovering, Coverage::kCovering}) {
        m.index = IndexConfig{k, Strategy::kSynchronous, c};
        out.push_back(m);
      }
    }
  }
  return out;
}

std::vector<JoinMethod> parse_method_list(std::string_view list) {
  std::vector<JoinMethod> out;
  while (!list.empty()) {
    const auto comma = list.find(',');
    std::string_view item = list.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item == "all") {
      auto all = all_methods();
      out.insert(out.end(), all.begin(), all.end());
    } else if (item == "standard") {
      auto std_methods = standard_methods();
      out.insert(out.end(), std_methods.begin(), std_methods.end());
    } else if (!item.empty()) {
      out.push_back(JoinMethod::parse(item));
    }
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  if (out.empty()) throw ConfigError("empty method list");
  return out;
}

}  // namespace lsmjoin::join
