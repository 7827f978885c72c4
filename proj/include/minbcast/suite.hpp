#pragma once

#include <string>
#include <vector>

#include "minbcast/engine.hpp"
#include "minbcast/generators.hpp"

namespace minbcast {

// Aggregated outcome of one config run `repetitions` times with derived
// seeds, each run verified against the trace checker and the oracles.
struct SuiteOutcome {
  int runs = 0;
  int failed = 0;
  std::vector<std::string> failures;  // one line per violation, capped

  long min_rounds = 0, max_rounds = 0;
  double mean_rounds = 0.0;
  long max_delay = 0;      // max over nodes and runs
  long max_tree_depth = 0; // spanning-tree depth
};

// Runs one configuration end to end: generate, run, verify_trace, result
// oracles (minimum, leader, spanning tree), determinism re-run, and for
// the combined variant the final-node injection probes.
SuiteOutcome run_suite(const ExperimentConfig& cfg);

// The standard mixed corpus (both protocol variants over paths, cycles,
// grids, stars, complete and random graphs with several id regimes);
// >= 500 runs in total across repetitions.
std::vector<ExperimentConfig> standard_corpus();

// One row of the scaling study on adversarial rings.
struct BenchPoint {
  int diameter = 0;
  std::size_t id_len = 0;
  std::size_t kmin_len = 0;
  long rounds = 0;           // fast protocol, message-terminating
  long bound = 0;            // 8 * (kmin_len + D * (ceil_log2(kmin_len) + 2))
  double ratio = 0.0;        // rounds / (D * log2(kmin_len) + kmin_len)
  long baseline_rounds = -1; // -1: baseline not run at this point
  long baseline_floor = 0;   // 0.5 * D * kmin_len
};

// Adversarial-ring grid: D in {10,25,50,100} x minimal-key length in
// {72,266,1036} (the smallest achievable key lengths at or above 64, 256
// and 1024). The baseline runs on the largest diameter of each row, or on
// every point when baseline_everywhere is set.
std::vector<BenchPoint> run_scaling_bench(bool baseline_everywhere = false);

std::string bench_to_csv(const std::vector<BenchPoint>& points);

}  // namespace minbcast
