#include "lsmjoin/index/posting_list.hpp"

#include "lsmjoin/common/coding.hpp"
#include "lsmjoin/common/error.hpp"

namespace lsmjoin::index {

std::string encode_posting(const PostingList& pl) {
  std::string out;
  put_varint(out, pl.adds.size());
  for (const auto& [pk, payload] : pl.adds) put_length_prefixed(out, pk);
  put_varint(out, pl.removes.size());
  for (const auto& pk : pl.removes) put_length_prefixed(out, pk);
  if (!pl.adds.empty()) {
    out.push_back(pl.covering ? 1 : 0);
    if (pl.covering) {
      for (const auto& [pk, payload] : pl.adds) put_length_prefixed(out, payload);
    }
  }
  return out;
}

PostingList decode_posting(std::string_view in) {
  PostingList pl;
  auto fail = [] { throw CorruptionError("malformed posting list"); };
  uint64_t n = 0;
  if (!get_varint(in, n) || n > in.size()) fail();
  std::vector<std::string> order;
  order.reserve(n);
  for (uint64_t i = 0; i < n; ++i) {
    std::string_view pk;
    if (!get_length_prefixed(in, pk)) fail();
    if (!order.empty() && pk <= order.back()) fail();
    order.emplace_back(pk);
  }
  uint64_t r = 0;
  if (!get_varint(in, r) || r > in.size()) fail();
  for (uint64_t i = 0; i < r; ++i) {
    std::string_view pk;
    if (!get_length_prefixed(in, pk)) fail();
    pl.removes.emplace(pk);
  }
  if (n > 0) {
    if (in.empty()) fail();
    pl.covering = in.front() != 0;
    in.remove_prefix(1);
    for (auto& pk : order) {
      std::string_view payload;
      if (pl.covering && !get_length_prefixed(in, payload)) fail();
      pl.adds.emplace(std::move(pk), std::string(payload));
    }
  }
  if (!in.empty()) fail();
  return pl;
}

PostingList compose(const PostingList& newer, const PostingList& older) {
  PostingList out;
  out.covering = newer.covering || older.covering;
  for (const auto& [pk, payload] : older.adds) {
    if (!newer.removes.count(pk)) out.adds.emplace(pk, payload);
  }
  for (const auto& [pk, payload] : newer.adds) out.adds.insert_or_assign(pk, payload);
  for (const auto* set : {&older.removes, &newer.removes}) {
    for (const auto& pk : *set) {
      if (!out.adds.count(pk)) out.removes.insert(pk);
    }
  }
  return out;
}

std::string PostingMergeOperator::merge(std::string_view newer, std::string_view older) const {
  return encode_posting(compose(decode_posting(newer), decode_posting(older)));
}

std::optional<std::string> PostingMergeOperator::finalize_bottom(std::string_view value) const {
  PostingList pl = decode_posting(value);
  if (pl.adds.empty()) return std::nullopt;
  if (pl.removes.empty()) return std::string(value);
  pl.removes.clear();
  return encode_posting(pl);
}

std::string composite_key(std::string_view attr, std::string_view pk) {
  std::string key;
  key.reserve(attr.size() + 1 + pk.size());
  key.append(attr);
  key.push_back('\0');
  key.append(pk);
  return key;
}

std::pair<std::string_view, std::string_view> split_composite(std::string_view key) {
  const auto pos = key.find('\0');
  if (pos == std::string_view::npos) throw CorruptionError("composite key without separator");
  return {key.substr(0, pos), key.substr(pos + 1)};
}

}  // namespace lsmjoin::index
