#include "minbcast/network.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace minbcast {

Network Network::from_edges(std::vector<Identifier> ids,
                            std::vector<std::pair<int, int>> edges) {
  Network net;
  net.ids = std::move(ids);
  net.adj.resize(net.ids.size());
  const int n = net.size();
  for (auto [u, v] : edges) {
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= n || u == v) throw structural_error("network: bad edge endpoints");
    const int iu = static_cast<int>(net.adj[u].size());
    const int iv = static_cast<int>(net.adj[v].size());
    net.adj[u].push_back({v, iv});
    net.adj[v].push_back({u, iu});
    net.edges.emplace_back(u, v);
  }
  return net;
}

bool Network::connected() const {
  if (ids.empty()) return false;
  std::vector<char> seen(ids.size(), 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  std::size_t count = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (const Link& l : adj[v])
      if (!seen[l.peer]) {
        seen[l.peer] = 1;
        ++count;
        q.push(l.peer);
      }
  }
  return count == ids.size();
}

void Network::validate() const {
  if (ids.empty()) throw structural_error("network: no nodes");
  if (!connected()) throw structural_error("network: not connected");
  std::set<Identifier> distinct(ids.begin(), ids.end());
  if (distinct.size() != ids.size())
    throw structural_error("network: identifiers not pairwise distinct");
  std::set<std::pair<int, int>> edge_set(edges.begin(), edges.end());
  if (edge_set.size() != edges.size()) throw structural_error("network: duplicate edge");
  for (int v = 0; v < size(); ++v)
    for (int i = 0; i < degree(v); ++i) {
      const Link& l = adj[v][i];
      if (adj[l.peer][l.peer_index].peer != v ||
          adj[l.peer][l.peer_index].peer_index != i)
        throw structural_error("network: inconsistent link indexing");
    }
}

int Network::diameter() const {
  int diam = 0;
  const int n = size();
  std::vector<int> dist(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<int> q;
    q.push(s);
    dist[s] = 0;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      diam = std::max(diam, dist[v]);
      for (const Link& l : adj[v])
        if (dist[l.peer] < 0) {
          dist[l.peer] = dist[v] + 1;
          q.push(l.peer);
        }
    }
  }
  return diam;
}

}  // namespace minbcast
