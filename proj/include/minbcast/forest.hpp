#pragma once

#include <optional>
#include <string>
#include <vector>

#include "minbcast/bits.hpp"
#include "minbcast/keys.hpp"

namespace minbcast {

struct Network;
struct Trace;

// One key passing through a node: the round its candidate first equaled
// the key, and the link that delivered the last bit (-1 for the node's
// own key, which is "born" at round 0).
struct KeyArrival {
  Key key;
  long round = 0;
  int source_link = -1;

  bool operator==(const KeyArrival&) const = default;
};

inline constexpr int kRootMarker = -1;

// Node-side append-only log of key arrivals; the current parent is the
// source of the last (PL-minimal) arrival.
struct ParentTracker {
  std::vector<KeyArrival> arrivals;

  void record_own(Key own_key) { arrivals.push_back({std::move(own_key), 0, kRootMarker}); }
  void record_arrival(Key key, long round, int source_link) {
    arrivals.push_back({std::move(key), round, source_link});
  }
  // Link index of the parent, or kRootMarker.
  int current_parent() const { return arrivals.back().source_link; }
  // Parent one arrival earlier (the parent in Gamma(t-1)), if any.
  int previous_parent() const {
    return arrivals.size() >= 2 ? arrivals[arrivals.size() - 2].source_link : kRootMarker;
  }
};

// Rooted tree over the network, edges child -> parent.
struct RootedTree {
  int root = -1;
  std::vector<int> parent;  // node index, -1 for the root (and absent nodes)
  std::vector<char> member;
};

// The parent-pointer digraph at one round boundary, annotated per edge.
struct ForestSnapshot {
  long round = 0;
  std::vector<int> parent_link;   // link index or kRootMarker
  std::vector<int> parent_node;   // node index or -1
  std::vector<const Key*> edge_key;
  std::vector<long> birth;
};

// --- Observer side: everything below is rebuilt from traces, so it also
// serves as an independent oracle for the node-side bookkeeping.

// Arrival logs recovered from the per-round candidate and participant
// snapshots of a trace (no node-internal parent state is consulted).
std::vector<ParentTracker> derive_arrivals(const Trace& trace);

ForestSnapshot snapshot_forest(const Network& net,
                               const std::vector<ParentTracker>& arrivals, long round);

// Fan-out <= 1 and no cycles; throws protocol_violation on failure.
void check_forest(const ForestSnapshot& snap);

// The tree of all nodes whose candidate ever equaled K, rooted at the
// node owning K. Throws if no node owns K.
RootedTree static_tree(const Network& net, const std::vector<ParentTracker>& arrivals,
                       const Key& key);

// Spanning tree at termination of the message-terminating protocol.
// Validates the tree properties and throws protocol_violation otherwise.
RootedTree extract_spanning_tree(const Network& net,
                                 const std::vector<ParentTracker>& arrivals);

// Graphviz DOT rendering; nodes labeled with identifiers, edges child ->
// parent, root highlighted.
std::string tree_to_dot(const Network& net, const RootedTree& tree);

}  // namespace minbcast
