#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "lsmjoin/lsm/storage_config.hpp"

namespace lsmjoin::index {

// Primary keys associated with one join-attribute value. `adds` maps each
// primary key to its payload (empty unless covering). `removes` only appears
// in Synchronous Lazy fragments that have not yet reached the bottom level.
struct PostingList {
  std::map<std::string, std::string, std::less<>> adds;
  std::set<std::string, std::less<>> removes;
  bool covering = false;

  bool empty() const { return adds.empty() && removes.empty(); }
  friend bool operator==(const PostingList&, const PostingList&) = default;
};

// Layout: [varint n_adds][(varint len, pk)...][varint n_removes][(varint len, pk)...]
// followed, only when n_adds > 0, by [covering u8][(varint len, payload)... if covering].
// Sets are encoded in ascending order, so equal lists encode identically; an
// empty list is two bytes.
std::string encode_posting(const PostingList& pl);
// Throws CorruptionError on malformed bytes.
PostingList decode_posting(std::string_view bytes);

// Applies a newer fragment over an older one:
//   adds    = (older.adds - newer.removes) ∪ newer.adds   (newer payload wins)
//   removes = (older.removes ∪ newer.removes) - adds
PostingList compose(const PostingList& newer, const PostingList& older);

class PostingMergeOperator final : public lsm::MergeOperator {
 public:
  std::string merge(std::string_view newer, std::string_view older) const override;
  // Removes are meaningless below the bottom; a list left without adds is dropped.
  std::optional<std::string> finalize_bottom(std::string_view value) const override;
};

// Composite index key: attr 0x00 pk. Inputs must be 0x00-free.
std::string composite_key(std::string_view attr, std::string_view pk);
// Splits at the first 0x00; throws CorruptionError when there is none.
std::pair<std::string_view, std::string_view> split_composite(std::string_view key);

}  // namespace lsmjoin::index
