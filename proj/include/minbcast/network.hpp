#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "minbcast/bits.hpp"
#include "minbcast/keys.hpp"

namespace minbcast {

// A connected graph with per-node identifiers and per-node link index
// functions. Link indices at a node are 0-based positions into adj[v];
// both endpoints index every link.
struct Network {
  struct Link {
    int peer = -1;        // neighbor node
    int peer_index = -1;  // index of this link in the neighbor's list
  };

  std::vector<Identifier> ids;
  std::vector<std::vector<Link>> adj;
  std::vector<std::pair<int, int>> edges;  // u < v, insertion order

  int size() const { return static_cast<int>(ids.size()); }
  int degree(int v) const { return static_cast<int>(adj[v].size()); }
  int neighbor(int v, int link) const { return adj[v][link].peer; }

  // Builds the adjacency lists; each node indexes its links in edge
  // insertion order.
  static Network from_edges(std::vector<Identifier> ids,
                            std::vector<std::pair<int, int>> edges);

  // Connectivity, pairwise-distinct identifiers, sane link indexing.
  // Throws structural_error on violation.
  void validate() const;

  bool connected() const;
  int diameter() const;  // all-pairs BFS; instrumentation only

  bool operator==(const Network& o) const { return ids == o.ids && edges == o.edges; }
};

}  // namespace minbcast
