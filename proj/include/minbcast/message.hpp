#pragma once

#include <string>

#include "minbcast/bits.hpp"

namespace minbcast {

// One broadcast message of the key-flooding protocol: an optional
// information bit plus three control flags. The all-absent value is the
// empty message (nothing on the wire).
//
// Wire encoding (bit-exact, used verbatim in traces):
//   empty message            -> "0"
//   non-empty                -> "1" + info + correction + corr_start + corr_end
// A non-empty message always carries an information bit, so the encoding
// is either 1 or 5 bits.
struct AMessage {
  bool present = false;
  char info = '0';  // '0' or '1', meaningful iff present
  bool correction = false;
  bool corr_start = false;
  bool corr_end = false;

  bool empty() const { return !present; }
  bool operator==(const AMessage&) const = default;
};

AMessage parse_a_message(const std::string& bits);
std::string serialize(const AMessage& m);

// Child-link maintenance messages, directed per link.
// Wire encoding: empty -> "0", child -> "10", not_child -> "11".
enum class BTag : unsigned char { None = 0, Child, NotChild };

// Confirmation/termination echo messages, directed per link.
// Wire encoding: empty -> "0", confirm -> "10", terminate -> "11".
enum class CTag : unsigned char { None = 0, Confirm, Terminate };

std::string serialize(BTag t);
std::string serialize(CTag t);
BTag parse_b_tag(const std::string& bits);
CTag parse_c_tag(const std::string& bits);

// Message of the naive restart-flooding baseline: an optional information
// bit plus a restart flag telling the receiver to drop its buffer.
// Wire encoding: empty -> "0", non-empty -> "1" + info + restart.
struct BaselineMessage {
  bool present = false;
  char info = '0';
  bool restart = false;

  bool empty() const { return !present; }
  bool operator==(const BaselineMessage&) const = default;
};

BaselineMessage parse_baseline_message(const std::string& bits);
std::string serialize(const BaselineMessage& m);

}  // namespace minbcast
