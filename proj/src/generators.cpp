#include "minbcast/generators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <set>

namespace minbcast {

std::string to_string(Topology t) {
  switch (t) {
    case Topology::Path: return "path";
    case Topology::Cycle: return "cycle";
    case Topology::Grid: return "grid";
    case Topology::Star: return "star";
    case Topology::Complete: return "complete";
    case Topology::RandomConnected: return "random";
  }
  throw config_error("unknown topology");
}

Topology topology_from_string(const std::string& s) {
  if (s == "path") return Topology::Path;
  if (s == "cycle") return Topology::Cycle;
  if (s == "grid") return Topology::Grid;
  if (s == "star") return Topology::Star;
  if (s == "complete") return Topology::Complete;
  if (s == "random") return Topology::RandomConnected;
  throw config_error("unknown topology: " + s);
}

std::string to_string(IdScheme s) {
  switch (s) {
    case IdScheme::UniformRandom: return "uniform";
    case IdScheme::Adversarial: return "adversarial";
    case IdScheme::Explicit: return "explicit";
  }
  throw config_error("unknown identifier scheme");
}

IdScheme id_scheme_from_string(const std::string& s) {
  if (s == "uniform") return IdScheme::UniformRandom;
  if (s == "adversarial") return IdScheme::Adversarial;
  if (s == "explicit") return IdScheme::Explicit;
  throw config_error("unknown identifier scheme: " + s);
}

namespace {

std::vector<std::pair<int, int>> make_edges(const ExperimentConfig& cfg,
                                            std::mt19937_64& rng) {
  const int n = cfg.nodes;
  std::vector<std::pair<int, int>> edges;
  switch (cfg.topology) {
    case Topology::Path:
      for (int v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
      return edges;
    case Topology::Cycle:
      if (n < 3) throw config_error("cycle needs at least 3 nodes");
      for (int v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
      edges.emplace_back(0, n - 1);
      return edges;
    case Topology::Star:
      for (int v = 1; v < n; ++v) edges.emplace_back(0, v);
      return edges;
    case Topology::Complete:
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
      return edges;
    case Topology::Grid: {
      int rows = cfg.grid_rows;
      if (rows <= 0) {
        rows = static_cast<int>(std::sqrt(static_cast<double>(n)));
        while (rows > 1 && n % rows != 0) --rows;
      }
      if (rows < 1 || n % rows != 0)
        throw config_error("grid rows must divide the node count");
      const int cols = n / rows;
      auto at = [cols](int r, int c) { return r * cols + c; };
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
          if (c + 1 < cols) edges.emplace_back(at(r, c), at(r, c + 1));
          if (r + 1 < rows) edges.emplace_back(at(r, c), at(r + 1, c));
        }
      return edges;
    }
    case Topology::RandomConnected: {
      if (cfg.edge_prob <= 0.0 || cfg.edge_prob > 1.0)
        throw config_error("edge probability must be in (0,1]");
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (int attempt = 0; attempt < 1000; ++attempt) {
        edges.clear();
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b)
            if (u(rng) < cfg.edge_prob) edges.emplace_back(a, b);
        std::vector<Identifier> dummy(n);
        for (int v = 0; v < n; ++v) dummy[v] = Bits(1, '0') + bin_encode(v);
        if (Network::from_edges(dummy, edges).connected()) return edges;
      }
      throw config_error("random graph never came out connected; raise the edge probability");
    }
  }
  throw config_error("unknown topology");
}

std::vector<Identifier> uniform_ids(const ExperimentConfig& cfg, std::mt19937_64& rng) {
  const int n = cfg.nodes;
  if (cfg.id_min_len > cfg.id_max_len) throw config_error("empty identifier length range");
  if (cfg.id_max_len > kMaxIdentifierLength) throw config_error("identifier length too large");
  // Make sure distinct sampling can succeed at all.
  double space = 0;
  for (std::size_t l = cfg.id_min_len; l <= cfg.id_max_len && space < 4.0 * n; ++l)
    space += std::pow(2.0, static_cast<double>(std::min<std::size_t>(l, 40)));
  if (space < static_cast<double>(n))
    throw config_error("identifier space smaller than the node count");

  std::uniform_int_distribution<std::size_t> len_dist(cfg.id_min_len, cfg.id_max_len);
  std::set<Identifier> used;
  std::vector<Identifier> ids;
  while (ids.size() < static_cast<std::size_t>(n)) {
    Identifier id(len_dist(rng), '0');
    for (char& c : id) c = (rng() & 1) ? '1' : '0';
    if (used.insert(id).second) ids.push_back(std::move(id));
  }
  return ids;
}

std::vector<Identifier> adversarial_ids(const ExperimentConfig& cfg) {
  const int n = cfg.nodes;
  const std::size_t m = cfg.adv_len;
  // All identifiers share length m and a long all-zero prefix; non-minimal
  // ones carry a 1 followed by a distinct tail, so every pairwise key
  // divergence happens within the last `tail+1` bits. This is what makes
  // restart-flooding pay nearly a full key per hop.
  const std::size_t tail = static_cast<std::size_t>(std::bit_width(static_cast<unsigned>(n)));
  if (m < tail + 2)
    throw config_error("adversarial identifiers too short for this node count");
  int pos = cfg.adv_position < 0 ? 0 : cfg.adv_position;
  if (pos >= n) throw config_error("adversarial position out of range");
  std::vector<Identifier> ids(n);
  ids[pos] = Identifier(m, '0');
  std::uint64_t counter = 0;
  for (int v = 0; v < n; ++v) {
    if (v == pos) continue;
    Identifier id(m - tail - 1, '0');
    id.push_back('1');
    Bits suffix = bin_encode(counter++);
    id.append(tail - suffix.size(), '0');
    id += suffix;
    ids[v] = std::move(id);
  }
  return ids;
}

}  // namespace

Network generate(const ExperimentConfig& cfg) {
  if (cfg.nodes < 1) throw config_error("node count must be positive");
  std::mt19937_64 rng(cfg.seed * 0x9e3779b97f4a7c15ULL + 1);
  auto edges = make_edges(cfg, rng);
  std::vector<Identifier> ids;
  switch (cfg.ids) {
    case IdScheme::UniformRandom:
      ids = uniform_ids(cfg, rng);
      break;
    case IdScheme::Adversarial:
      ids = adversarial_ids(cfg);
      break;
    case IdScheme::Explicit:
      ids = cfg.explicit_ids;
      if (static_cast<int>(ids.size()) != cfg.nodes)
        throw config_error("explicit identifier list does not match the node count");
      for (const Identifier& id : ids)
        if (id.find_first_not_of("01") != Bits::npos)
          throw config_error("identifiers must be binary strings");
      break;
  }
  Network net = Network::from_edges(std::move(ids), std::move(edges));
  try {
    net.validate();
  } catch (const structural_error& e) {
    throw config_error(std::string("generated network invalid: ") + e.what());
  }
  return net;
}

}  // namespace minbcast
