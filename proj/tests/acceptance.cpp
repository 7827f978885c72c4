// Acceptance gate: one pass/fail line per criterion, non-zero exit on any
// failure. Thresholds are pinned here and nowhere else.

#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "minbcast/engine.hpp"
#include "minbcast/suite.hpp"

using namespace minbcast;

namespace {

int g_failures = 0;

void report(int criterion, const char* title, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, title,
              detail.empty() ? "" : " — ", detail.c_str());
  if (!ok) ++g_failures;
}

std::vector<Identifier> all_ids(std::size_t l) {
  std::vector<Identifier> out;
  for (std::size_t x = 0; x < (std::size_t{1} << l); ++x) {
    Identifier id(l, '0');
    for (std::size_t b = 0; b < l; ++b)
      if (x & (std::size_t{1} << (l - 1 - b))) id[b] = '1';
    out.push_back(std::move(id));
  }
  return out;
}

// Criterion 1: encoding suite, exhaustive.
void criterion_1() {
  std::string why;
  bool ok = true;
  // Round trip to identifier length 12.
  for (std::size_t l = 0; l <= 12 && ok; ++l)
    for (const Identifier& id : all_ids(l)) {
      const Key k = encode_key(id);
      if (!is_complete_key(k) || decode_key(k) != id || k.size() != key_length_for(l)) {
        ok = false;
        why = "round trip failed at length " + std::to_string(l);
        break;
      }
    }
  // Prefix-freeness and the equal-length law to length 10.
  if (ok) {
    std::vector<Key> keys;
    std::set<std::size_t> lengths_for_l;
    for (std::size_t l = 0; l <= 10 && ok; ++l) {
      lengths_for_l.clear();
      for (const Identifier& id : all_ids(l)) {
        keys.push_back(encode_key(id));
        lengths_for_l.insert(keys.back().size());
      }
      if (lengths_for_l.size() != 1) {
        ok = false;
        why = "equal-length identifiers got different key lengths";
      }
    }
    for (std::size_t i = 0; i < keys.size() && ok; ++i)
      for (std::size_t j = 0; j < keys.size(); ++j)
        if (i != j && keys[i].size() < keys[j].size() &&
            is_prefix_of(keys[i], keys[j])) {
          ok = false;
          why = "a key is a prefix of another key";
          break;
        }
  }
  // Shortlex <-> PL consistency, exhaustive over all identifiers <= 8.
  if (ok) {
    std::vector<Identifier> ids;
    for (std::size_t l = 0; l <= 8; ++l)
      for (const Identifier& id : all_ids(l)) ids.push_back(id);
    std::vector<Key> keys;
    for (const Identifier& id : ids) keys.push_back(encode_key(id));
    for (std::size_t i = 0; i < ids.size() && ok; ++i)
      for (std::size_t j = 0; j < ids.size(); ++j) {
        const Ord o = shortlex_compare(ids[i], ids[j]);
        const PlCmp p = pl_compare(keys[i], keys[j]);
        const bool consistent = (o == Ord::Equal && p == PlCmp::Equal) ||
                                (o == Ord::Less && p == PlCmp::Less) ||
                                (o == Ord::Greater && p == PlCmp::Greater);
        if (!consistent) {
          ok = false;
          why = "order mismatch for '" + ids[i] + "' vs '" + ids[j] + "'";
          break;
        }
      }
  }
  report(1, "prefix-free order-preserving encoding (exhaustive)", ok, why);
}

// Criteria 2-5 and 7 share the corpus: one pass over every run collects
// failures per criterion.
struct CorpusTally {
  int runs = 0;
  int broadcast_bad = 0;   // criterion 2
  int tree_bad = 0;        // criterion 3
  int termination_bad = 0; // criterion 4
  int invariant_bad = 0;   // criterion 5
  int determinism_bad = 0; // criterion 7
  std::string first_detail;

  void note(int& counter, const std::string& what) {
    ++counter;
    if (first_detail.empty()) first_detail = what;
  }
};

void run_corpus(CorpusTally& tally) {
  for (const ExperimentConfig& cfg : standard_corpus()) {
    for (int rep = 0; rep < cfg.repetitions; ++rep) {
      ExperimentConfig c = cfg;
      c.seed = cfg.seed + static_cast<std::uint64_t>(rep);
      ++tally.runs;
      const std::string label = to_string(c.topology) + "(n=" + std::to_string(c.nodes) +
                                ") seed=" + std::to_string(c.seed) + " " +
                                to_string(c.variant);
      try {
        const Network net = generate(c);
        RunConfig rc;
        rc.variant = c.variant;
        rc.seed = c.seed;
        const RunResult r = run(net, rc);

        // Criterion 2: broadcast value and unique leader.
        const Identifier want = oracle_min_id(net);
        int leaders = 0;
        bool bcast_ok = true;
        for (int v = 0; v < net.size(); ++v) {
          if (extract_min(r, v) != want) bcast_ok = false;
          leaders += leader_flag(r, v);
        }
        if (!bcast_ok || leaders != 1)
          tally.note(tally.broadcast_bad, label + ": wrong minimum or leader count");

        // Criterion 3: spanning tree properties and root.
        try {
          const RootedTree tree = extract_spanning_tree(net, r.trackers);
          oracle_tree_check(tree, net);
        } catch (const std::exception& e) {
          tally.note(tally.tree_bad, label + ": " + e.what());
        }

        // Criterion 4: processor termination discipline.
        if (c.variant == Variant::ProcessorTerminating) {
          long first_final = r.stages + 1;
          bool all_final = true;
          for (long f : r.final_stage) {
            if (f < 0) all_final = false;
            first_final = std::min(first_final, f);
          }
          if (!all_final)
            tally.note(tally.termination_bad, label + ": node never finalized");
          else if (net.size() > 1 && first_final + 1 < r.a_quiesce_stage)
            tally.note(tally.termination_bad, label + ": finalized before quiescence");
          if (r.combined) {
            std::mt19937_64 rng(c.seed ^ 0x5bd1e995ULL);
            for (int probe = 0; probe < std::min(net.size(), 4); ++probe)
              if (!r.combined->probe_final_node(static_cast<int>(rng() % net.size()), rng))
                tally.note(tally.termination_bad, label + ": final node not inert");
          }
        }

        // Criterion 5: every proved invariant over the whole trace.
        const auto violations = verify_trace(r.trace);
        if (!violations.empty())
          tally.note(tally.invariant_bad,
                     label + ": " + violations.front().what + " (round " +
                         std::to_string(violations.front().stage) + ")");

        // Criterion 7: bit-identical re-run.
        if (!(run(net, rc).trace == r.trace))
          tally.note(tally.determinism_bad, label + ": trace not reproducible");
      } catch (const std::exception& e) {
        tally.note(tally.invariant_bad, label + ": exception: " + e.what());
      }
    }
  }
}

void criterion_6() {
  std::vector<BenchPoint> points;
  std::string why;
  bool ok = true;
  try {
    points = run_scaling_bench(false);
  } catch (const std::exception& e) {
    report(6, "time-bound scaling", false, e.what());
    return;
  }
  double max_ratio = 0;
  for (const BenchPoint& p : points) {
    std::printf("  bench D=%-3d |K_min|=%-5zu rounds=%-6ld bound=%-6ld ratio=%.2f",
                p.diameter, p.kmin_len, p.rounds, p.bound, p.ratio);
    if (p.baseline_rounds >= 0)
      std::printf(" baseline=%ld floor=%ld", p.baseline_rounds, p.baseline_floor);
    std::printf("\n");
    max_ratio = std::max(max_ratio, p.ratio);
    if (p.rounds > p.bound && ok) {
      ok = false;
      why = "fast protocol exceeded the bound at D=" + std::to_string(p.diameter);
    }
    if (p.baseline_rounds >= 0 && p.baseline_rounds < p.baseline_floor && ok) {
      ok = false;
      why = "baseline finished below the separation floor at D=" +
            std::to_string(p.diameter);
    }
  }
  // Growth-shape check: the measured-to-model ratio stays bounded.
  if (ok && max_ratio > 8.0) {
    ok = false;
    why = "T / (D log L + L) ratio exceeded 8";
  }
  if (ok)
    why = "max T/(D log L + L) ratio " + std::to_string(max_ratio);
  report(6, "O(L + D log L) scaling with D*L baseline separation", ok, why);
}

}  // namespace

int main() {
  criterion_1();

  CorpusTally tally;
  run_corpus(tally);
  const std::string corpus_size = std::to_string(tally.runs) + " runs";
  const bool enough = tally.runs >= 500;
  report(2, "broadcast minimum + unique leader on the corpus",
         enough && tally.broadcast_bad == 0,
         tally.broadcast_bad ? tally.first_detail : corpus_size);
  report(3, "spanning tree properties on the corpus", enough && tally.tree_bad == 0,
         tally.tree_bad ? tally.first_detail : corpus_size);
  report(4, "processor termination (all final, after quiescence, final inert)",
         enough && tally.termination_bad == 0,
         tally.termination_bad ? tally.first_detail : corpus_size);
  report(5, "trace invariants at every round of every corpus trace",
         enough && tally.invariant_bad == 0,
         tally.invariant_bad ? tally.first_detail : corpus_size);

  criterion_6();

  report(7, "bit-identical traces on re-run", enough && tally.determinism_bad == 0,
         tally.determinism_bad ? tally.first_detail : corpus_size);

  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 7 acceptance criteria passed (%s)\n", corpus_size.c_str());
  return 0;
}
