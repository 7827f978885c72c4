#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace minbcast {

// Binary strings are std::strings over the characters '0' and '1'.
// The empty string doubles as the empty identifier and the empty message.
using Bits = std::string;

// Malformed input: a string that does not parse as what the caller claims
// it to be (truncated key, bad binary number, ...).
struct structural_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A state that honest peers can never produce. Signals a bug in the
// protocol implementation, not bad input.
struct protocol_violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Ord { Less, Greater, Equal };

// Partial lexicographic comparison. Two strings are PL-comparable iff
// neither is a prefix of the other; the one branching to '0' after the
// common prefix is smaller.
enum class PlCmp { Less, Greater, Equal, LeftIsPrefix, RightIsPrefix };

std::size_t lcp_len(const Bits& a, const Bits& b);
Bits lcp(const Bits& a, const Bits& b);
bool is_prefix_of(const Bits& prefix, const Bits& str);

PlCmp pl_compare(const Bits& a, const Bits& b);

// Shorter strings first, ties broken lexicographically.
Ord shortlex_compare(const Bits& a, const Bits& b);

// One fold step of longest_pl_minimum: the PL-smaller string wins; of two
// prefix-related strings the longer wins. Returns one of its arguments.
const Bits* pl_min_longest(const Bits* a, const Bits* b);

// The longest element among the PL-minimal elements of a non-empty set.
// The PL-minimal elements of any set of binary strings form a prefix
// chain, so the result is unique.
Bits longest_pl_minimum(const std::vector<Bits>& set);

// Most-significant-bit-first binary representation without leading
// zeros; bin_encode(0) == "0".
Bits bin_encode(std::uint64_t n);

// Inverse of bin_encode. Rejects the empty string and leading zeros.
std::uint64_t bin_decode(const Bits& s);

}  // namespace minbcast
