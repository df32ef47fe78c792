#include "lsmjoin/workload/csv.hpp"

#include <fstream>

#include "lsmjoin/common/error.hpp"

namespace lsmjoin::workload {

UpdateStream load_csv(const std::filesystem::path& path, Table table) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  UpdateStream out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw ParameterError(path.string() + ":" + std::to_string(lineno) + ": " + why);
    };
    if (line.find('\0') != std::string::npos) fail("0x00 byte");
    const size_t c1 = line.find(',');
    if (c1 == std::string::npos) fail("expected primary_key,join_attr[,payload]");
    const size_t c2 = line.find(',', c1 + 1);
    Update u;
    u.table = table;
    u.pk = line.substr(0, c1);
    u.attr = line.substr(c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1);
    if (c2 != std::string::npos) u.payload = line.substr(c2 + 1);
    if (u.pk.empty() || u.attr.empty()) fail("empty key");
    out.push_back(std::move(u));
  }
  if (in.bad()) throw IoError("read failed: " + path.string());
  return out;
}

void dump_csv(const UpdateStream& stream, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  for (const auto& u : stream) {
    if (u.pk.find(',') != std::string::npos || u.attr.find(',') != std::string::npos)
      throw ParameterError("comma in key cannot be written as csv: " + u.pk);
    out << u.pk << ',' << u.attr;
    if (!u.payload.empty()) out << ',' << u.payload;
    out << '\n';
  }
  if (!out.flush()) throw IoError("write failed: " + path.string());
}

}  // namespace lsmjoin::workload
