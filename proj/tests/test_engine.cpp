#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>

#include "minbcast/engine.hpp"

using namespace minbcast;

namespace {

Network path3() {
  return Network::from_edges({"10", "0", "11"}, {{0, 1}, {1, 2}});
}

RunResult run_variant(const Network& net, Variant v, long budget = -1) {
  RunConfig cfg;
  cfg.variant = v;
  cfg.round_budget = budget;
  return run(net, cfg);
}

}  // namespace

TEST_CASE("single node terminates at round 0 with its own id") {
  const Network net = Network::from_edges({"1011"}, {});
  for (Variant v : {Variant::MessageTerminating, Variant::ProcessorTerminating,
                    Variant::Baseline}) {
    const RunResult r = run_variant(net, v);
    CHECK(r.termination_round == 0);
    CHECK(extract_min(r, 0) == "1011");
    CHECK(leader_flag(r, 0) == 1);
    CHECK(verify_trace(r.trace).empty());
  }
}

TEST_CASE("two nodes, ids 0 and 1") {
  const Network net = Network::from_edges({"0", "1"}, {{0, 1}});
  const RunResult r = run_variant(net, Variant::MessageTerminating);
  CHECK(extract_min(r, 0) == "0");
  CHECK(extract_min(r, 1) == "0");
  CHECK(leader_flag(r, 0) == 1);
  CHECK(leader_flag(r, 1) == 0);
  // Key length 5: the winner streams 5 bits; the loser needs a correction
  // detour. Well under a dozen rounds.
  CHECK(r.termination_round >= 5);
  CHECK(r.termination_round <= 12);
  CHECK(verify_trace(r.trace).empty());
}

TEST_CASE("oracles") {
  CHECK(oracle_min_id(path3()) == "0");
  CHECK(oracle_min_id(Network::from_edges({"01", "10"}, {{0, 1}})) == "01");

  const RunResult r = run_variant(path3(), Variant::MessageTerminating);
  const RootedTree tree = extract_spanning_tree(r.trace.net, r.trackers);
  oracle_tree_check(tree, r.trace.net);

  RootedTree bad = tree;
  bad.root = 0;
  bad.parent[0] = -1;
  bad.parent[1] = 0;
  CHECK_THROWS_AS(oracle_tree_check(bad, r.trace.net), protocol_violation);
}

TEST_CASE("processor-terminating run finalizes everyone after quiescence") {
  const Network net = Network::from_edges({"10", "0", "11", "010"},
                                          {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const RunResult r = run_variant(net, Variant::ProcessorTerminating);
  REQUIRE(r.final_stage.size() == 4);
  long first_final = r.stages;
  for (long f : r.final_stage) {
    CHECK(f >= 1);
    first_final = std::min(first_final, f);
  }
  CHECK(first_final + 1 >= r.a_quiesce_stage);
  CHECK(extract_min(r, 2) == "0");
  CHECK(verify_trace(r.trace).empty());

  // Final nodes are inert under arbitrary injected messages.
  REQUIRE(r.combined);
  std::mt19937_64 rng(5);
  for (int v = 0; v < 4; ++v)
    for (int rep = 0; rep < 20; ++rep) CHECK(r.combined->probe_final_node(v, rng));
}

TEST_CASE("baseline converges and verifies") {
  const Network net = Network::from_edges({"111", "0", "110", "101"},
                                          {{0, 1}, {1, 2}, {2, 3}});
  const RunResult r = run_variant(net, Variant::Baseline);
  for (int v = 0; v < 4; ++v) CHECK(extract_min(r, v) == "0");
  CHECK(verify_trace(r.trace).empty());
}

TEST_CASE("determinism: identical runs, identical traces") {
  const Network net = Network::from_edges({"10", "0", "11", "010", "1110"},
                                          {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {1, 3}});
  for (Variant v : {Variant::MessageTerminating, Variant::ProcessorTerminating}) {
    const RunResult a = run_variant(net, v);
    const RunResult b = run_variant(net, v);
    CHECK(a.trace == b.trace);
  }
}

TEST_CASE("budget exhaustion raises a timeout") {
  CHECK_THROWS_AS(run_variant(path3(), Variant::MessageTerminating, 2), timeout_error);
}

TEST_CASE("delays: zero at the minimal node, bounded across edges") {
  const Network net = Network::from_edges({"0", "10", "11", "010"},
                                          {{0, 1}, {1, 2}, {2, 3}});
  const RunResult r = run_variant(net, Variant::MessageTerminating);
  const DelayReport rep = delays(r.trace);
  CHECK(rep.nondecreasing);
  CHECK(rep.max_delay[0] == 0);
  // Correction-message length plus one round of link latency.
  const long bound = static_cast<long>(bin_encode(rep.kmin_len).size()) + 1;
  for (const auto& [u, w] : net.edges)
    CHECK(std::abs(rep.max_delay[u] - rep.max_delay[w]) <= bound);
}

TEST_CASE("the checker names corrupted traces") {
  const RunResult r = run_variant(path3(), Variant::MessageTerminating);
  REQUIRE(verify_trace(r.trace).empty());

  SUBCASE("tampered message") {
    Trace t = r.trace;
    auto& wire = t.stages[1].a.sent[0];
    REQUIRE(wire.size() == 5);
    wire[1] = wire[1] == '0' ? '1' : '0';
    CHECK(!verify_trace(t).empty());
  }
  SUBCASE("tampered state snapshot") {
    Trace t = r.trace;
    t.stages[2].a.post[1].candidate += "1";
    CHECK(!verify_trace(t).empty());
  }
  SUBCASE("tampered final tag") {
    const Network net = Network::from_edges({"0", "1"}, {{0, 1}});
    const RunResult pr = run_variant(net, Variant::ProcessorTerminating);
    Trace t = pr.trace;
    REQUIRE(!t.stages.empty());
    t.stages.back().c->final_after[0] = 0;
    CHECK(!verify_trace(t).empty());
  }
}

TEST_CASE("default budgets dominate the proven bounds") {
  CHECK(default_round_budget(Variant::MessageTerminating, 72, 10) > 72 + 10 * 9);
  CHECK(default_round_budget(Variant::Baseline, 1036, 100) > 100 * 1036);
}
