#include "lsmjoin/join/inlj.hpp"

#include "lsmjoin/join/sources.hpp"

namespace lsmjoin::join {

void inlj(const JoinMethod& method, index::IndexedTable& r, index::IndexedTable& s, RowCollector& out) {
  std::vector<std::string> matches;
  // Inner side: primary keys of S records whose attribute equals `attr`.
  auto probe = [&](const std::string& attr) {
    matches.clear();
    switch (method.scenario) {
      case Scenario::kP:
      case Scenario::kPS:
        if (s.data().get(attr)) matches.push_back(attr);
        break;
      case Scenario::kNS:
      case Scenario::kSS:
        for (auto& c : s.resolved_lookup(attr)) matches.push_back(std::move(c.pk));
        break;
      case Scenario::kN:
        for (auto it = s.data().full_scan(); it.valid(); it.next()) {
          if (index::record_attr(it.entry().value) == attr) matches.push_back(it.entry().key);
        }
        break;
    }
  };
  auto emit = [&](const std::string& attr, const std::string& left_pk) {
    for (const auto& m : matches) out(JoinRow{attr, left_pk, m});
  };

  if (method.scenario == Scenario::kPS || method.scenario == Scenario::kSS) {
    const bool validate_outer = r.config()->validation();
    for (auto scan = r.scan_index(); scan.valid(); scan.next()) {
      const auto& item = scan.item();
      probe(item.attr);
      // A stale outer entry only costs a data lookup when it would produce rows.
      if (matches.empty() || (validate_outer && !r.validate(item.pk, item.attr))) continue;
      emit(item.attr, item.pk);
    }
    return;
  }
  auto source = data_records(r);
  JoinRecord rec;
  while (source(rec)) {
    probe(rec.attr);
    emit(rec.attr, rec.pk);
  }
}

}  // namespace lsmjoin::join
