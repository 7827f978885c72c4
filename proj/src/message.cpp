#include "minbcast/message.hpp"

namespace minbcast {

namespace {
bool flag_at(const std::string& s, std::size_t i) {
  if (i >= s.size() || (s[i] != '0' && s[i] != '1'))
    throw structural_error("message: malformed bit field");
  return s[i] == '1';
}
}  // namespace

std::string serialize(const AMessage& m) {
  if (m.empty()) return "0";
  std::string out = "1";
  out.push_back(m.info);
  out.push_back(m.correction ? '1' : '0');
  out.push_back(m.corr_start ? '1' : '0');
  out.push_back(m.corr_end ? '1' : '0');
  return out;
}

AMessage parse_a_message(const std::string& bits) {
  AMessage m;
  if (bits == "0" || bits.empty()) return m;
  if (bits.size() != 5 || bits[0] != '1')
    throw structural_error("AMessage: expected 1 or 5 bits");
  m.present = true;
  m.info = bits[1];
  if (m.info != '0' && m.info != '1') throw structural_error("AMessage: bad info bit");
  m.correction = flag_at(bits, 2);
  m.corr_start = flag_at(bits, 3);
  m.corr_end = flag_at(bits, 4);
  if ((m.corr_start || m.corr_end) && !m.correction)
    throw structural_error("AMessage: correction flags without correction");
  return m;
}

std::string serialize(BTag t) {
  switch (t) {
    case BTag::None: return "0";
    case BTag::Child: return "10";
    case BTag::NotChild: return "11";
  }
  return "0";
}

std::string serialize(CTag t) {
  switch (t) {
    case CTag::None: return "0";
    case CTag::Confirm: return "10";
    case CTag::Terminate: return "11";
  }
  return "0";
}

BTag parse_b_tag(const std::string& bits) {
  if (bits == "0" || bits.empty()) return BTag::None;
  if (bits == "10") return BTag::Child;
  if (bits == "11") return BTag::NotChild;
  throw structural_error("BTag: malformed");
}

CTag parse_c_tag(const std::string& bits) {
  if (bits == "0" || bits.empty()) return CTag::None;
  if (bits == "10") return CTag::Confirm;
  if (bits == "11") return CTag::Terminate;
  throw structural_error("CTag: malformed");
}

std::string serialize(const BaselineMessage& m) {
  if (m.empty()) return "0";
  std::string out = "1";
  out.push_back(m.info);
  out.push_back(m.restart ? '1' : '0');
  return out;
}

BaselineMessage parse_baseline_message(const std::string& bits) {
  BaselineMessage m;
  if (bits == "0" || bits.empty()) return m;
  if (bits.size() != 3 || bits[0] != '1')
    throw structural_error("BaselineMessage: expected 1 or 3 bits");
  m.present = true;
  m.info = bits[1];
  if (m.info != '0' && m.info != '1')
    throw structural_error("BaselineMessage: bad info bit");
  m.restart = flag_at(bits, 2);
  return m;
}

}  // namespace minbcast
