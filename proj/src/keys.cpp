#include "minbcast/keys.hpp"

#include <bit>
#include <string>

namespace minbcast {

namespace {

// Largest k the classifier reasons about numerically. Identifiers are
// bounded by kMaxIdentifierLength, so genuine keys stay far below this.
constexpr int kMaxRank = 61;

// Identifier lengths consistent with a given k: k=0 -> {0}, k=1 -> {1},
// k>=2 -> (2^{k-2}, 2^{k-1}].
struct IdLenRange {
  std::uint64_t lo, hi;  // inclusive
};

IdLenRange id_len_range(int k) {
  if (k == 0) return {0, 0};
  if (k == 1) return {1, 1};
  const std::uint64_t hi = std::uint64_t{1} << (k - 1);
  return {(hi >> 1) + 1, hi};
}

}  // namespace

int key_rank(std::size_t id_len) {
  if (id_len == 0) return 0;
  if (id_len == 1) return 1;
  return std::bit_width(id_len - 1) + 1;  // ceil(log2) + 1
}

std::size_t key_length_for(std::size_t id_len) {
  const int k = key_rank(id_len);
  return (std::size_t{1} << k) + static_cast<std::size_t>(k) + 2;
}

Key encode_key(const Identifier& id) {
  if (id.size() > kMaxIdentifierLength)
    throw structural_error("encode_key: identifier longer than the configured bound");
  const int k = key_rank(id.size());
  const std::size_t pad = (std::size_t{1} << k) - id.size();
  Key out;
  out.reserve(key_length_for(id.size()));
  out.append(static_cast<std::size_t>(k) + 1, '1');
  out.append(pad, '0');
  out.push_back('1');
  out.append(id);
  return out;
}

KeyShape classify_key(const Bits& s) {
  // Position of the first '0' closes the 1-run and fixes k.
  std::size_t first_zero = s.find('0');
  if (first_zero == Bits::npos) return KeyShape::ProperPrefix;  // 1^m extends some key
  if (first_zero == 0) return KeyShape::NotAKeyPrefix;          // keys start with '1'
  const int k = static_cast<int>(first_zero) - 1;

  // Scan the 0-run after the header.
  std::size_t q = s.find('1', first_zero);
  const std::size_t zeros_seen = (q == Bits::npos ? s.size() : q) - first_zero;

  if (k > kMaxRank) {
    // The total key length overflows anything we can hold; the string can
    // only be a (very short) prefix, and only while still inside the 0-run
    // headroom, which is astronomically large here.
    return q == Bits::npos ? KeyShape::ProperPrefix : KeyShape::NotAKeyPrefix;
  }

  const std::uint64_t total = (std::uint64_t{1} << k) + static_cast<std::uint64_t>(k) + 2;
  if (s.size() > total) return KeyShape::NotAKeyPrefix;

  const IdLenRange r = id_len_range(k);
  const std::uint64_t max_zeros = (std::uint64_t{1} << k) - r.lo;
  if (q == Bits::npos)
    return zeros_seen <= max_zeros ? KeyShape::ProperPrefix : KeyShape::NotAKeyPrefix;

  const std::uint64_t id_len = (std::uint64_t{1} << k) - zeros_seen;
  if (zeros_seen > (std::uint64_t{1} << k) || id_len < r.lo || id_len > r.hi)
    return KeyShape::NotAKeyPrefix;
  // Everything after q is identifier payload; any bits are fine there.
  return s.size() == total ? KeyShape::Complete : KeyShape::ProperPrefix;
}

Identifier decode_key(const Bits& key) {
  if (classify_key(key) != KeyShape::Complete)
    throw structural_error("decode_key: not a complete key");
  const std::size_t first_zero = key.find('0');
  const std::size_t payload = key.find('1', first_zero) + 1;
  return key.substr(payload);
}

}  // namespace minbcast
