#pragma once

#include <cstddef>
#include <vector>

#include "minbcast/forest.hpp"
#include "minbcast/message.hpp"
#include "minbcast/proto_a.hpp"

namespace minbcast {

// Child-link maintenance and the confirmation/termination echo. Each stage
// runs one step of the key-flooding protocol (slot A), one child-update
// step (slot B) and one confirmation step (slot C); this state carries
// everything B and C need between slots.
struct NodeBCState {
  std::vector<char> children;   // per link: believes this neighbor is a child
  std::vector<char> confirmed;  // subset of children with a live confirmation
  bool sent_confirm = false;    // a confirmation to the current parent is out
  bool ignoring = false;        // drop confirms while the candidate is incomplete
  bool last_b_empty = true;     // previous B slot brought no message
  bool pending_terminate = false;  // terminate received, forward next C slot
  bool final_state = false;

  bool operator==(const NodeBCState&) const = default;

  static NodeBCState initial(std::size_t degree);
};

// The arrival latched by this stage's A slot, if any: the new parent link
// and the parent before the adoption.
struct Adoption {
  bool happened = false;
  int new_parent = kRootMarker;
  int old_parent = kRootMarker;
};

// B slot emission: child to the link that delivered the adopted key, and
// not_child to the previous parent when it exists and differs. Re-adopting
// through the same link re-sends child (idempotent at the receiver).
std::vector<BTag> b_emit(const NodeBCState& s, const Adoption& adoption,
                         std::size_t degree);

// Receiver side of one B message. not_child from a non-child link is a
// tolerated no-op (possible after resets); counted in stale_not_child.
void b_absorb(NodeBCState& s, std::size_t link, BTag tag, long* stale_not_child);

// Confirmation reset, applied after an A slot that strictly PL-decreased
// the candidate and after a B slot that removed a child. Also applied on
// parent change so a confirm sent to the old parent is not reused.
void apply_reset(NodeBCState& s);

// Keeps `ignoring` in sync with the candidate after every A slot.
void refresh_ignoring(NodeBCState& s, const NodeAState& a);

// The local termination test, evaluated between the B and C slots: the
// flooding protocol is locally quiet, everyone around committed the same
// complete key, and the last B slot was silent on every link.
bool local_term(const NodeAState& a, const NodeBCState& s);

// One C slot emission plus the final-state transition. parent_link is the
// current parent (kRootMarker at a dynamic-forest root).
std::vector<CTag> c_emit(NodeBCState& s, bool local_term_now, int parent_link);

// Receiver side of one C message. Confirms are dropped while ignoring;
// a confirm from a non-child link is a tolerated no-op (stale after a
// reset), counted in stale_confirm.
void c_absorb(NodeBCState& s, std::size_t link, CTag tag, long* stale_confirm);

}  // namespace minbcast
