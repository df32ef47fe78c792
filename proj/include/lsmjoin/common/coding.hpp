#pragma once

#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>

#include "lsmjoin/common/error.hpp"

namespace lsmjoin {

// Little-endian fixed-width and LEB128 varint helpers shared by the run,
// spill and posting-list encoders.

inline void put_fixed32(std::string& dst, uint32_t v) {
  char buf[4];
  for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  dst.append(buf, 4);
}

inline void put_fixed64(std::string& dst, uint64_t v) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  dst.append(buf, 8);
}

inline uint32_t decode_fixed32(const char* p) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  return v;
}

inline uint64_t decode_fixed64(const char* p) {
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  return v;
}

inline void put_varint(std::string& dst, uint64_t v) {
  while (v >= 0x80) {
    dst.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  dst.push_back(static_cast<char>(v));
}

inline size_t varint_length(uint64_t v) {
  size_t n = 1;
  while (v >= 0x80) {
    v >>= 7;
    ++n;
  }
  return n;
}

// Reads a varint from the front of `in` and advances it. Returns false on
// truncated or overlong input.
inline bool get_varint(std::string_view& in, uint64_t& out) {
  uint64_t result = 0;
  for (int shift = 0; shift <= 63 && !in.empty(); shift += 7) {
    auto byte = static_cast<unsigned char>(in.front());
    in.remove_prefix(1);
    result |= static_cast<uint64_t>(byte & 0x7f) << shift;
    if ((byte & 0x80) == 0) {
      out = result;
      return true;
    }
  }
  return false;
}

inline bool get_length_prefixed(std::string_view& in, std::string_view& out) {
  uint64_t len = 0;
  if (!get_varint(in, len) || len > in.size()) return false;
  out = in.substr(0, len);
  in.remove_prefix(len);
  return true;
}

inline void put_length_prefixed(std::string& dst, std::string_view s) {
  put_varint(dst, s.size());
  dst.append(s);
}

}  // namespace lsmjoin
