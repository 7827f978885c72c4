#include "minbcast/proto_bc.hpp"

#include <algorithm>

namespace minbcast {

NodeBCState NodeBCState::initial(std::size_t degree) {
  NodeBCState s;
  s.children.assign(degree, 0);
  s.confirmed.assign(degree, 0);
  return s;
}

std::vector<BTag> b_emit(const NodeBCState& s, const Adoption& adoption,
                         std::size_t degree) {
  std::vector<BTag> tags(degree, BTag::None);
  if (s.final_state || !adoption.happened) return tags;
  tags[adoption.new_parent] = BTag::Child;
  if (adoption.old_parent != kRootMarker && adoption.old_parent != adoption.new_parent)
    tags[adoption.old_parent] = BTag::NotChild;
  return tags;
}

void b_absorb(NodeBCState& s, std::size_t link, BTag tag, long* stale_not_child) {
  switch (tag) {
    case BTag::None:
      return;
    case BTag::Child:
      s.children[link] = 1;
      return;
    case BTag::NotChild:
      if (!s.children[link]) {
        if (stale_not_child) ++*stale_not_child;
        return;
      }
      s.children[link] = 0;
      apply_reset(s);
      return;
  }
}

void apply_reset(NodeBCState& s) {
  std::fill(s.confirmed.begin(), s.confirmed.end(), 0);
  s.sent_confirm = false;
}

void refresh_ignoring(NodeBCState& s, const NodeAState& a) {
  s.ignoring = !a.candidate_complete;
}

bool local_term(const NodeAState& a, const NodeBCState& s) {
  if (!a.candidate_complete) return false;
  if (!is_asleep(a)) return false;  // own participant == candidate, no correction
  if (!s.last_b_empty) return false;
  for (const NeighborView& v : a.views)
    if (!v.corr_buffer.empty() || v.participant != a.candidate) return false;
  return true;
}

std::vector<CTag> c_emit(NodeBCState& s, bool local_term_now, int parent_link) {
  std::vector<CTag> tags(s.children.size(), CTag::None);
  if (s.final_state) return tags;
  if (s.pending_terminate) {
    for (std::size_t i = 0; i < s.children.size(); ++i)
      if (s.children[i]) tags[i] = CTag::Terminate;
    s.pending_terminate = false;
    s.final_state = true;
    return tags;
  }
  if (!local_term_now) return tags;
  bool all_confirmed = true;
  for (std::size_t i = 0; i < s.children.size(); ++i)
    if (s.children[i] && !s.confirmed[i]) {
      all_confirmed = false;
      break;
    }
  if (!all_confirmed) return tags;
  if (parent_link == kRootMarker) {
    for (std::size_t i = 0; i < s.children.size(); ++i)
      if (s.children[i]) tags[i] = CTag::Terminate;
    s.final_state = true;
  } else if (!s.sent_confirm && !s.ignoring) {
    tags[parent_link] = CTag::Confirm;
    s.sent_confirm = true;
  }
  return tags;
}

void c_absorb(NodeBCState& s, std::size_t link, CTag tag, long* stale_confirm) {
  switch (tag) {
    case CTag::None:
      return;
    case CTag::Confirm:
      if (s.ignoring) return;
      if (!s.children[link]) {
        if (stale_confirm) ++*stale_confirm;
        return;
      }
      s.confirmed[link] = 1;
      return;
    case CTag::Terminate:
      s.pending_terminate = true;
      return;
  }
}

}  // namespace minbcast
