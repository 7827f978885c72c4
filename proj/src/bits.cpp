#include "minbcast/bits.hpp"

#include <algorithm>

namespace minbcast {

std::size_t lcp_len(const Bits& a, const Bits& b) {
  const std::size_t n = std::min(a.size(), b.size());
  auto [ia, ib] = std::mismatch(a.data(), a.data() + n, b.data());
  (void)ib;
  return static_cast<std::size_t>(ia - a.data());
}

Bits lcp(const Bits& a, const Bits& b) { return a.substr(0, lcp_len(a, b)); }

bool is_prefix_of(const Bits& prefix, const Bits& str) {
  return prefix.size() <= str.size() &&
         std::equal(prefix.begin(), prefix.end(), str.begin());
}

PlCmp pl_compare(const Bits& a, const Bits& b) {
  const std::size_t p = lcp_len(a, b);
  if (p == a.size() && p == b.size()) return PlCmp::Equal;
  if (p == a.size()) return PlCmp::LeftIsPrefix;
  if (p == b.size()) return PlCmp::RightIsPrefix;
  return a[p] == '0' ? PlCmp::Less : PlCmp::Greater;
}

Ord shortlex_compare(const Bits& a, const Bits& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? Ord::Less : Ord::Greater;
  const int c = a.compare(b);
  if (c == 0) return Ord::Equal;
  return c < 0 ? Ord::Less : Ord::Greater;
}

const Bits* pl_min_longest(const Bits* a, const Bits* b) {
  switch (pl_compare(*a, *b)) {
    case PlCmp::Less: return a;
    case PlCmp::Greater: return b;
    case PlCmp::Equal: return a;
    case PlCmp::LeftIsPrefix: return b;
    case PlCmp::RightIsPrefix: return a;
  }
  return a;
}

Bits longest_pl_minimum(const std::vector<Bits>& set) {
  if (set.empty()) throw structural_error("longest_pl_minimum: empty set");
  const Bits* best = &set.front();
  for (std::size_t i = 1; i < set.size(); ++i) best = pl_min_longest(best, &set[i]);
  return *best;
}

Bits bin_encode(std::uint64_t n) {
  if (n == 0) return "0";
  Bits out;
  while (n > 0) {
    out.push_back(static_cast<char>('0' + (n & 1)));
    n >>= 1;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::uint64_t bin_decode(const Bits& s) {
  if (s.empty()) throw structural_error("bin_decode: empty string");
  if (s.size() > 1 && s[0] == '0') throw structural_error("bin_decode: leading zero");
  if (s.size() > 63) throw structural_error("bin_decode: too long");
  std::uint64_t n = 0;
  for (char c : s) {
    if (c != '0' && c != '1') throw structural_error("bin_decode: not a bit string");
    n = (n << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return n;
}

}  // namespace minbcast
