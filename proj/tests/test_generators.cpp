#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "minbcast/generators.hpp"

using namespace minbcast;

namespace {

ExperimentConfig base(Topology t, int n) {
  ExperimentConfig cfg;
  cfg.topology = t;
  cfg.nodes = n;
  cfg.id_min_len = 1;
  cfg.id_max_len = 16;
  cfg.seed = 11;
  return cfg;
}

}  // namespace

TEST_CASE("topology shapes") {
  CHECK(generate(base(Topology::Path, 5)).edges.size() == 4);
  CHECK(generate(base(Topology::Cycle, 6)).edges.size() == 6);
  CHECK(generate(base(Topology::Cycle, 6)).diameter() == 3);
  CHECK(generate(base(Topology::Star, 7)).edges.size() == 6);
  CHECK(generate(base(Topology::Star, 7)).diameter() == 2);
  CHECK(generate(base(Topology::Complete, 6)).edges.size() == 15);
  CHECK(generate(base(Topology::Complete, 6)).diameter() == 1);

  ExperimentConfig grid = base(Topology::Grid, 12);
  grid.grid_rows = 3;  // 3x4
  const Network g = generate(grid);
  CHECK(g.edges.size() == 3 * 3 + 2 * 4);  // rows*(cols-1) + (rows-1)*cols
  CHECK(g.diameter() == 5);

  ExperimentConfig rnd = base(Topology::RandomConnected, 20);
  rnd.edge_prob = 0.3;
  CHECK(generate(rnd).connected());
}

TEST_CASE("generator determinism") {
  const ExperimentConfig cfg = base(Topology::RandomConnected, 15);
  CHECK(generate(cfg) == generate(cfg));
  const Network a = generate(cfg);
  ExperimentConfig other = cfg;
  other.seed = 12;
  // Different seed: identifiers differ (edge sets may or may not).
  CHECK(generate(other).ids != a.ids);
}

TEST_CASE("uniform identifiers are distinct and length-bounded") {
  ExperimentConfig cfg = base(Topology::Complete, 40);
  cfg.id_min_len = 0;
  cfg.id_max_len = 6;
  const Network net = generate(cfg);
  std::set<Identifier> seen(net.ids.begin(), net.ids.end());
  CHECK(seen.size() == 40);
  for (const Identifier& id : net.ids) CHECK(id.size() <= 6);

  cfg.id_min_len = cfg.id_max_len = 2;  // only 4 strings of length 2
  CHECK_THROWS_AS(generate(cfg), config_error);
}

TEST_CASE("adversarial family: equal lengths, unique all-zero minimum, late divergence") {
  ExperimentConfig cfg = base(Topology::Cycle, 20);
  cfg.ids = IdScheme::Adversarial;
  cfg.adv_len = 32;
  const Network net = generate(cfg);
  CHECK(net.diameter() == 10);
  std::set<Identifier> seen;
  int zero_count = 0;
  for (const Identifier& id : net.ids) {
    CHECK(id.size() == 32);
    seen.insert(id);
    if (id.find('1') == Bits::npos) ++zero_count;
    // Everyone agrees on a long zero prefix: divergence only in the tail.
    CHECK(id.substr(0, 32 - 6) == Bits(32 - 6, '0'));
  }
  CHECK(zero_count == 1);
  CHECK(seen.size() == 20);

  cfg.adv_len = 4;  // too short to fit 20 distinct tails
  CHECK_THROWS_AS(generate(cfg), config_error);
}

TEST_CASE("explicit identifiers validated") {
  ExperimentConfig cfg = base(Topology::Path, 3);
  cfg.ids = IdScheme::Explicit;
  cfg.explicit_ids = {"10", "0", "11"};
  const Network net = generate(cfg);
  CHECK(net.ids == std::vector<Identifier>({"10", "0", "11"}));

  cfg.explicit_ids = {"10", "0"};
  CHECK_THROWS_AS(generate(cfg), config_error);
  cfg.explicit_ids = {"10", "0", "0"};
  CHECK_THROWS_AS(generate(cfg), config_error);
  cfg.explicit_ids = {"10", "0", "2x"};
  CHECK_THROWS_AS(generate(cfg), config_error);
}

TEST_CASE("bad configs are rejected") {
  CHECK_THROWS_AS(generate(base(Topology::Path, 0)), config_error);
  CHECK_THROWS_AS(generate(base(Topology::Cycle, 2)), config_error);
  ExperimentConfig cfg = base(Topology::Grid, 7);
  cfg.grid_rows = 3;  // does not divide 7
  CHECK_THROWS_AS(generate(cfg), config_error);
  CHECK_THROWS_AS(topology_from_string("tube"), config_error);
  CHECK_THROWS_AS(id_scheme_from_string("weird"), config_error);
}
