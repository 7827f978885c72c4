#pragma once

#include <cstddef>

#include "minbcast/bits.hpp"

namespace minbcast {

// A key is the prefix-free, order-preserving encoding of an identifier:
//
//   K(x) = 1^{k+1} 0^{2^k - |x|} 1 x,   k = ceil(log2 |x|) + 1
//
// with K(lambda) = "101" (k = 0) and k = 1 for single-bit identifiers.
// |K(x)| = 2^k + k + 2 depends on k only, so equal-length identifiers get
// equal-length keys, and the PL order on keys mirrors the shortlex order
// on identifiers.
using Key = Bits;
using Identifier = Bits;

// Identifier lengths are configuration-bounded to keep rounds finite.
inline constexpr std::size_t kMaxIdentifierLength = std::size_t{1} << 16;

enum class KeyShape { Complete, ProperPrefix, NotAKeyPrefix };

// k for an identifier of the given length.
int key_rank(std::size_t id_len);

// 2^k + k + 2.
std::size_t key_length_for(std::size_t id_len);

Key encode_key(const Identifier& id);

// Inverse of encode_key; throws structural_error on anything that is not
// a complete well-formed key.
Identifier decode_key(const Bits& key);

// Classifies an arbitrary bit string against the set of keys. Once the
// leading 1-run is closed by a 0, the header fixes k and hence the full
// key length, so completeness is decidable from a prefix.
KeyShape classify_key(const Bits& s);

inline bool is_complete_key(const Bits& s) {
  return classify_key(s) == KeyShape::Complete;
}

}  // namespace minbcast
