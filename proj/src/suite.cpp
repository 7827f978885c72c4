#include "minbcast/suite.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <sstream>

namespace minbcast {

namespace {

long tree_depth(const RootedTree& tree, int n) {
  long depth = 0;
  for (int s = 0; s < n; ++s) {
    long d = 0;
    for (int v = s; v != tree.root; v = tree.parent[v]) ++d;
    depth = std::max(depth, d);
  }
  return depth;
}

std::string run_label(const ExperimentConfig& cfg, std::uint64_t seed) {
  std::ostringstream s;
  s << to_string(cfg.topology) << "(n=" << cfg.nodes << ") ids=" << to_string(cfg.ids)
    << " variant=" << to_string(cfg.variant) << " seed=" << seed;
  return s.str();
}

}  // namespace

SuiteOutcome run_suite(const ExperimentConfig& cfg) {
  SuiteOutcome out;
  out.min_rounds = -1;
  double total_rounds = 0;
  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(rep);
    ExperimentConfig c = cfg;
    c.seed = seed;
    ++out.runs;
    bool bad = false;
    auto fail = [&](const std::string& why) {
      if (!bad) ++out.failed;
      bad = true;
      if (out.failures.size() < 50) out.failures.push_back(run_label(cfg, seed) + ": " + why);
    };
    try {
      const Network net = generate(c);
      RunConfig rc;
      rc.variant = c.variant;
      rc.round_budget = c.round_budget;
      rc.record = !c.light;
      rc.seed = seed;
      RunResult r = run(net, rc);

      // Trace invariants.
      if (rc.record)
        for (const Violation& v : verify_trace(r.trace)) {
          std::ostringstream w;
          w << "round " << v.stage << " node " << v.node << ": " << v.what;
          fail(w.str());
        }

      // Result oracles: broadcast value and unique leader.
      const Identifier want = oracle_min_id(net);
      int leaders = 0;
      for (int v = 0; v < net.size(); ++v) {
        if (extract_min(r, v) != want) fail("extracted minimum disagrees with the oracle");
        leaders += leader_flag(r, v);
      }
      if (leaders != 1) fail("leader flags do not sum to 1");

      // Spanning tree oracle (the baseline does not build one).
      if (c.variant != Variant::Baseline) {
        const RootedTree tree = extract_spanning_tree(net, r.trackers);
        oracle_tree_check(tree, net);
        out.max_tree_depth = std::max(out.max_tree_depth, tree_depth(tree, net.size()));
      }

      // Combined runs: everyone final, nobody final before flooding
      // quiesced, and final nodes are inert under injected messages.
      if (c.variant == Variant::ProcessorTerminating) {
        long first_final = r.stages + 1;
        for (int v = 0; v < net.size(); ++v) {
          if (r.final_stage[v] < 0) fail("node never reached the final state");
          first_final = std::min(first_final, r.final_stage[v]);
        }
        if (net.size() > 1 && first_final + 1 < r.a_quiesce_stage)
          fail("a node finalized before flooding quiesced");
        if (r.combined) {
          std::mt19937_64 rng(seed ^ 0xabcddcba12344321ULL);
          for (int probe = 0; probe < std::min(net.size(), 5); ++probe) {
            const int v = static_cast<int>(rng() % net.size());
            if (!r.combined->probe_final_node(v, rng))
              fail("final node reacted to injected messages");
          }
        }
      }

      // Determinism: the same seed must reproduce the trace bit for bit.
      if (rc.record) {
        const RunResult r2 = run(net, rc);
        if (!(r2.trace == r.trace)) fail("re-run produced a different trace");
      }

      if (rc.record) {
        const DelayReport dr = delays(r.trace);
        if (!dr.nondecreasing) fail("delay sequence decreased");
        for (long d : dr.max_delay) out.max_delay = std::max(out.max_delay, d);
      }
      total_rounds += static_cast<double>(r.termination_round);
      out.max_rounds = std::max(out.max_rounds, r.termination_round);
      out.min_rounds = out.min_rounds < 0 ? r.termination_round
                                          : std::min(out.min_rounds, r.termination_round);
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  if (out.runs > 0) out.mean_rounds = total_rounds / out.runs;
  if (out.min_rounds < 0) out.min_rounds = 0;
  return out;
}

std::vector<ExperimentConfig> standard_corpus() {
  struct TopoPoint {
    Topology topo;
    int n;
    double p;
  };
  std::vector<TopoPoint> topos;
  for (int n : {2, 3, 5, 9, 17, 33, 50}) topos.push_back({Topology::Path, n, 0});
  for (int n : {3, 5, 9, 17, 33, 50}) topos.push_back({Topology::Cycle, n, 0});
  for (int n : {3, 5, 9, 17, 33, 50}) topos.push_back({Topology::Star, n, 0});
  for (int n : {2, 3, 5, 9, 17, 30}) topos.push_back({Topology::Complete, n, 0});
  for (int n : {4, 6, 12, 25, 49}) topos.push_back({Topology::Grid, n, 0});
  topos.push_back({Topology::RandomConnected, 10, 0.35});
  topos.push_back({Topology::RandomConnected, 20, 0.3});
  topos.push_back({Topology::RandomConnected, 35, 0.15});
  topos.push_back({Topology::RandomConnected, 50, 0.15});

  const std::pair<std::size_t, std::size_t> ranges[] = {{1, 8}, {1, 64}, {32, 64}, {0, 6}};
  std::vector<ExperimentConfig> corpus;
  std::uint64_t base_seed = 7;
  for (const TopoPoint& tp : topos)
    for (const auto& [lo, hi] : ranges)
      for (Variant var : {Variant::MessageTerminating, Variant::ProcessorTerminating}) {
        ExperimentConfig cfg;
        cfg.topology = tp.topo;
        cfg.nodes = tp.n;
        cfg.edge_prob = tp.p;
        cfg.ids = IdScheme::UniformRandom;
        cfg.id_min_len = lo;
        cfg.id_max_len = hi;
        cfg.variant = var;
        cfg.seed = base_seed;
        cfg.repetitions = 2;
        base_seed += 1000;
        corpus.push_back(cfg);
      }
  return corpus;
}

std::vector<BenchPoint> run_scaling_bench(bool baseline_everywhere) {
  const int diameters[] = {10, 25, 50, 100};
  const std::size_t id_lens[] = {32, 128, 512};
  std::vector<BenchPoint> points;
  for (std::size_t id_len : id_lens) {
    for (int d : diameters) {
      BenchPoint pt;
      pt.diameter = d;
      pt.id_len = id_len;
      pt.kmin_len = key_length_for(id_len);
      ExperimentConfig cfg;
      cfg.topology = Topology::Cycle;
      cfg.nodes = 2 * d;
      cfg.ids = IdScheme::Adversarial;
      cfg.adv_len = id_len;
      cfg.variant = Variant::MessageTerminating;
      cfg.light = true;
      const Network net = generate(cfg);

      RunConfig rc;
      rc.record = false;
      pt.rounds = run(net, rc).termination_round;
      const long log_l = std::bit_width(pt.kmin_len - 1);
      pt.bound = 8 * (static_cast<long>(pt.kmin_len) + d * (log_l + 2));
      pt.ratio = static_cast<double>(pt.rounds) /
                 (static_cast<double>(d) * static_cast<double>(log_l) +
                  static_cast<double>(pt.kmin_len));
      pt.baseline_floor = static_cast<long>(pt.kmin_len) * d / 2;
      if (baseline_everywhere || d == diameters[std::size(diameters) - 1]) {
        RunConfig rb;
        rb.variant = Variant::Baseline;
        rb.record = false;
        pt.baseline_rounds = run(net, rb).termination_round;
      }
      points.push_back(pt);
    }
  }
  return points;
}

std::string bench_to_csv(const std::vector<BenchPoint>& points) {
  std::ostringstream out;
  out << "diameter,id_len,kmin_len,rounds,bound,ratio,baseline_rounds,baseline_floor\n";
  for (const BenchPoint& p : points)
    out << p.diameter << ',' << p.id_len << ',' << p.kmin_len << ',' << p.rounds << ','
        << p.bound << ',' << p.ratio << ',' << p.baseline_rounds << ',' << p.baseline_floor
        << '\n';
  return out.str();
}

}  // namespace minbcast
