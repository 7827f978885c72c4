#include "minbcast/forest.hpp"

#include <algorithm>
#include <sstream>

#include "minbcast/network.hpp"
#include "minbcast/trace.hpp"

namespace minbcast {

std::vector<ParentTracker> derive_arrivals(const Trace& trace) {
  const Network& net = trace.net;
  const int n = net.size();
  std::vector<Key> own(n);
  std::vector<ParentTracker> trackers(n);
  std::vector<Bits> prev(n);
  for (int v = 0; v < n; ++v) {
    own[v] = encode_key(net.ids[v]);
    trackers[v].record_own(own[v]);
    prev[v] = own[v];
  }
  for (std::size_t s = 0; s < trace.stages.size(); ++s) {
    const ARecord& a = trace.stages[s].a;
    const long round = static_cast<long>(s) + 1;
    for (int v = 0; v < n; ++v) {
      const Bits& cand = a.post[v].candidate;
      if (cand == prev[v]) continue;
      if (cand != own[v] && is_complete_key(cand)) {
        int source = -1;
        for (int i = 0; i < net.degree(v); ++i) {
          if (a.post[net.neighbor(v, i)].participant == cand) {
            source = i;
            break;
          }
        }
        if (source < 0)
          throw protocol_violation("derive_arrivals: completed key with no completing link");
        trackers[v].record_arrival(cand, round, source);
      }
      prev[v] = cand;
    }
  }
  return trackers;
}

ForestSnapshot snapshot_forest(const Network& net,
                               const std::vector<ParentTracker>& arrivals, long round) {
  const int n = net.size();
  ForestSnapshot snap;
  snap.round = round;
  snap.parent_link.assign(n, kRootMarker);
  snap.parent_node.assign(n, -1);
  snap.edge_key.assign(n, nullptr);
  snap.birth.assign(n, 0);
  for (int v = 0; v < n; ++v) {
    const auto& log = arrivals[v].arrivals;
    const KeyArrival* last = nullptr;
    for (const KeyArrival& ka : log) {
      if (ka.round > round) break;
      last = &ka;
    }
    if (!last) throw protocol_violation("snapshot_forest: node without any passed key");
    snap.parent_link[v] = last->source_link;
    if (last->source_link != kRootMarker)
      snap.parent_node[v] = net.neighbor(v, last->source_link);
    snap.edge_key[v] = &last->key;
    snap.birth[v] = last->round;
  }
  return snap;
}

void check_forest(const ForestSnapshot& snap) {
  // Fan-out <= 1 holds by construction (one parent pointer per node);
  // check acyclicity by walking parent chains with color marks.
  const int n = static_cast<int>(snap.parent_node.size());
  std::vector<int> color(n, 0);  // 0 unseen, 1 on current path, 2 done
  for (int s = 0; s < n; ++s) {
    int v = s;
    std::vector<int> path;
    while (v != -1 && color[v] == 0) {
      color[v] = 1;
      path.push_back(v);
      v = snap.parent_node[v];
    }
    if (v != -1 && color[v] == 1)
      throw protocol_violation("snapshot_forest: directed cycle in parent digraph");
    for (int u : path) color[u] = 2;
  }
}

RootedTree static_tree(const Network& net, const std::vector<ParentTracker>& arrivals,
                       const Key& key) {
  const int n = net.size();
  RootedTree tree;
  tree.parent.assign(n, -1);
  tree.member.assign(n, 0);
  std::vector<long> birth(n, -1);
  for (int v = 0; v < n; ++v) {
    for (const KeyArrival& ka : arrivals[v].arrivals) {
      if (ka.key != key) continue;
      tree.member[v] = 1;
      birth[v] = ka.round;
      if (ka.source_link == kRootMarker)
        tree.root = v;
      else
        tree.parent[v] = net.neighbor(v, ka.source_link);
      break;
    }
  }
  if (tree.root < 0) throw structural_error("static_tree: key never originated");
  for (int v = 0; v < n; ++v) {
    if (!tree.member[v] || v == tree.root) continue;
    const int p = tree.parent[v];
    if (p < 0 || !tree.member[p])
      throw protocol_violation("static_tree: parent outside the tree");
    if (birth[p] >= birth[v])
      throw protocol_violation("static_tree: birth dates not decreasing towards the root");
  }
  return tree;
}

RootedTree extract_spanning_tree(const Network& net,
                                 const std::vector<ParentTracker>& arrivals) {
  const int n = net.size();
  RootedTree tree;
  tree.parent.assign(n, -1);
  tree.member.assign(n, 1);
  const Key& final_key = arrivals[0].arrivals.back().key;
  int edges = 0;
  for (int v = 0; v < n; ++v) {
    const KeyArrival& last = arrivals[v].arrivals.back();
    if (last.key != final_key)
      throw protocol_violation("extract_spanning_tree: nodes disagree on the final key");
    if (last.source_link == kRootMarker) {
      if (tree.root >= 0) throw protocol_violation("extract_spanning_tree: two roots");
      tree.root = v;
    } else {
      tree.parent[v] = net.neighbor(v, last.source_link);
      ++edges;
    }
  }
  if (tree.root < 0) throw protocol_violation("extract_spanning_tree: no root");
  if (edges != n - 1)
    throw protocol_violation("extract_spanning_tree: wrong edge count");
  // Acyclicity / connectivity: every node must reach the root.
  for (int s = 0; s < n; ++s) {
    int v = s, hops = 0;
    while (v != tree.root) {
      v = tree.parent[v];
      if (v < 0 || ++hops > n)
        throw protocol_violation("extract_spanning_tree: node does not reach the root");
    }
  }
  return tree;
}

std::string tree_to_dot(const Network& net, const RootedTree& tree) {
  std::ostringstream out;
  out << "digraph spanning_tree {\n";
  out << "  rankdir=BT;\n";
  for (int v = 0; v < net.size(); ++v) {
    if (!tree.member[v]) continue;
    out << "  n" << v << " [label=\"" << (net.ids[v].empty() ? "(empty)" : net.ids[v])
        << "\"";
    if (v == tree.root) out << ", shape=doublecircle, style=bold";
    out << "];\n";
  }
  for (int v = 0; v < net.size(); ++v)
    if (tree.member[v] && tree.parent[v] >= 0)
      out << "  n" << v << " -> n" << tree.parent[v] << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace minbcast
