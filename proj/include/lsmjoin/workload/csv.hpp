#pragma once

#include <filesystem>

#include "lsmjoin/workload/generator.hpp"

namespace lsmjoin::workload {

// Lines are `primary_key,join_attr[,payload]`; the payload is the rest of the
// line. Empty keys, 0x00 bytes and short lines are rejected with the line
// number. File order is update order.
UpdateStream load_csv(const std::filesystem::path& path, Table table);
void dump_csv(const UpdateStream& stream, const std::filesystem::path& path);

}  // namespace lsmjoin::workload
