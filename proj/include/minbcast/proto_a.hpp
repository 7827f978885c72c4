#pragma once

#include <cstddef>
#include <vector>

#include "minbcast/bits.hpp"
#include "minbcast/keys.hpp"
#include "minbcast/message.hpp"

namespace minbcast {

// One node's record of what a neighbor has committed so far: the copy of
// the neighbor's participant, and the partially received correction
// message (empty outside the neighbor's exceptional periods).
struct NeighborView {
  Bits participant;
  Bits corr_buffer;

  bool operator==(const NeighborView&) const = default;
};

// Candidate-change events latched by update_candidate for the same stage's
// child-maintenance and termination machinery.
struct AEvents {
  bool pl_decreased = false;
  // Candidate just became a complete key different from the node's own.
  bool key_completed = false;

  bool operator==(const AEvents&) const = default;
};

// Per-node state of the minimal-key flooding protocol with corrections.
struct NodeAState {
  Key own_key;
  Bits candidate;    // C: current best guess at the minimal key
  Bits participant;  // P: prefix of a candidate committed to the neighbors
  Bits corr_sent;    // R: prefix of the current correction message sent
  std::vector<NeighborView> views;  // indexed by link

  AEvents last_events;
  bool candidate_complete = true;  // classify_key(candidate) == Complete

  bool operator==(const NodeAState&) const = default;

  static NodeAState initial(Key key, std::size_t degree);
};

// bin(|lcp(C,P)|) when the committed prefix diverged from the candidate,
// empty during regular periods.
Bits correction_string(const NodeAState& s);

// The single broadcast message for the next round; identical on every link.
AMessage emit(const NodeAState& s);

// Folds the node's own just-sent message into P and R. `sent` must be
// emit(s); the channel is error-free so no echo is needed.
void advance_self(NodeAState& s, const AMessage& sent);

// Applies one received message to the view of the sending neighbor.
void absorb_link(NeighborView& view, const AMessage& msg);

// C <- longest PL-minimal string of {C} u {participant views}; call after
// all links have absorbed this round's messages. Latches change events.
AEvents update_candidate(NodeAState& s);

// True iff emit(s) would be the empty message and stay so absent input.
bool is_asleep(const NodeAState& s);

// ---------------------------------------------------------------------------
// Naive restart-flooding baseline: streams the full current-minimum key bit
// by bit and restarts the stream from scratch whenever the candidate
// decreases in the PL order. Same candidate rule, no corrections.

struct BaselineNode {
  Key own_key;
  Bits candidate;
  std::size_t sent = 0;          // bits of the candidate already streamed
  bool restart_pending = false;  // next bit carries the restart flag
  std::vector<Bits> views;       // received stream per link

  // Incremental comparison of each view against the candidate; rel is
  // 0 while prefix-aligned, -1 once the view is PL-less, +1 once PL-greater.
  struct ViewCmp {
    std::size_t lcp = 0;
    int rel = 0;
  };
  std::vector<ViewCmp> cmp;

  static BaselineNode initial(Key key, std::size_t degree);
};

BaselineMessage baseline_emit(const BaselineNode& s);
void baseline_advance(BaselineNode& s, const BaselineMessage& sent);
void baseline_absorb(BaselineNode& s, std::size_t link, const BaselineMessage& msg);
// Returns true iff the candidate strictly PL-decreased (stream restarts).
bool baseline_update_candidate(BaselineNode& s);
bool baseline_asleep(const BaselineNode& s);

}  // namespace minbcast
