#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "minbcast/forest.hpp"
#include "minbcast/network.hpp"
#include "minbcast/proto_a.hpp"
#include "minbcast/proto_bc.hpp"
#include "minbcast/trace.hpp"

namespace minbcast {

// Raised when a run exhausts its round budget. The protocols provably
// terminate well inside the default budget, so hitting this is a bug,
// not bad luck.
struct timeout_error : std::runtime_error {
  long budget;
  Trace partial;  // whatever was recorded before the budget ran out
  timeout_error(long b, Trace t)
      : std::runtime_error("round budget exhausted (" + std::to_string(b) + ")"),
        budget(b),
        partial(std::move(t)) {}
};

struct RunConfig {
  Variant variant = Variant::MessageTerminating;
  long round_budget = -1;  // -1: default from the network parameters
  bool record = true;      // full per-round trace; off for large sweeps
  std::uint64_t seed = 0;  // metadata carried into the trace
};

// Default budgets. For the fast protocols: generous versus the proven
// O(L + D log L); the baseline gets room for its Theta(D L) behavior.
long default_round_budget(Variant variant, std::size_t kmin_len, int diameter);

// ---------------------------------------------------------------------------
// Lockstep simulators. One simulation advances single-threaded; a round's
// emissions are all computed before any absorption.

class MessageSim {
 public:
  explicit MessageSim(const Network& net);

  bool all_asleep() const;
  // Returns true if any non-empty message was sent this round.
  bool step(long round, ARecord* rec);

  const std::vector<NodeAState>& states() const { return a_; }
  const std::vector<ParentTracker>& trackers() const { return trackers_; }

 private:
  const Network& net_;
  std::vector<NodeAState> a_;
  std::vector<ParentTracker> trackers_;
  std::vector<AMessage> out_;
};

class CombinedSim {
 public:
  explicit CombinedSim(const Network& net);

  bool all_final() const;
  // One 3-slot stage; returns true if the A slot carried traffic.
  bool step(long stage, StageRecord* rec);

  const std::vector<NodeAState>& a_states() const { return a_; }
  const std::vector<NodeBCState>& bc_states() const { return bc_; }
  const std::vector<ParentTracker>& trackers() const { return trackers_; }
  const std::vector<long>& final_stage() const { return final_stage_; }

  // Drives one full stage of the given (final) node against injected
  // messages, off to the side. Returns true iff the node emitted nothing
  // and its state is unchanged afterwards.
  bool probe_final_node(int node, std::mt19937_64& rng) const;

 private:
  friend struct CombinedProbe;
  const Network& net_;
  std::vector<NodeAState> a_;
  std::vector<NodeBCState> bc_;
  std::vector<ParentTracker> trackers_;
  std::vector<long> final_stage_;
  std::vector<AMessage> a_out_;
  std::vector<std::vector<BTag>> b_out_;
  std::vector<std::vector<CTag>> c_out_;
};

class BaselineSim {
 public:
  explicit BaselineSim(const Network& net);

  bool all_asleep() const;
  bool step(long round, ARecord* rec);

  const std::vector<BaselineNode>& states() const { return b_; }

 private:
  const Network& net_;
  std::vector<BaselineNode> b_;
  std::vector<BaselineMessage> out_;
};

// ---------------------------------------------------------------------------

struct RunResult {
  Trace trace;
  long termination_round = 0;
  long stages = 0;
  long a_quiesce_stage = 0;
  Key k_min;  // observer-side, for instrumentation

  std::vector<ParentTracker> trackers;  // node-side parent bookkeeping
  std::vector<NodeAState> final_a;
  std::vector<BaselineNode> final_baseline;
  std::vector<NodeBCState> final_bc;
  std::vector<long> final_stage;

  // Kept alive for post-run probing (final-node injection tests).
  std::shared_ptr<CombinedSim> combined;
};

RunResult run(const Network& net, const RunConfig& cfg);

// M(H): the identifier every node can decode from its final candidate.
Identifier extract_min(const RunResult& r, int node);
// l(H): 1 for the unique leader, 0 elsewhere.
int leader_flag(const RunResult& r, int node);

// Delay instrumentation (A projection of the trace; stage index = A step).
struct DelayReport {
  std::vector<long> max_delay;  // delta(v); -1 when never defined
  bool nondecreasing = true;
  std::size_t kmin_len = 0;
};
DelayReport delays(const Trace& trace);

// Brute-force oracles realizing the model definitions directly.
Identifier oracle_min_id(const Network& net);
// Tree properties (i)-(iv) plus the root having the minimal identifier.
// Throws protocol_violation with a description on failure.
void oracle_tree_check(const RootedTree& tree, const Network& net);

struct Violation {
  long stage = 0;
  int node = -1;
  std::string what;
};

// Runs every proved invariant over a recorded trace; empty on honest runs.
std::vector<Violation> verify_trace(const Trace& trace);

}  // namespace minbcast
