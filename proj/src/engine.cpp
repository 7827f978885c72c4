#include "minbcast/engine.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <utility>

namespace minbcast {

namespace {

int ceil_log2(std::size_t n) {
  if (n <= 1) return 0;
  return std::bit_width(n - 1);
}

}  // namespace

long default_round_budget(Variant variant, std::size_t kmin_len, int diameter) {
  const long l = static_cast<long>(kmin_len);
  const long d = diameter;
  if (variant == Variant::Baseline) return 6 * d * l + 10 * l + 1000;
  // Counts rounds for the message-terminating variant and stages for the
  // combined one (a stage carries exactly one flooding step plus echo
  // slots, and the echo waves are covered by the (D+1) term).
  return 10 * (l + (d + 1) * (ceil_log2(kmin_len) + 2)) + 100;
}

// ---------------------------------------------------------------------------
// MessageSim

MessageSim::MessageSim(const Network& net) : net_(net) {
  const int n = net.size();
  a_.reserve(n);
  trackers_.resize(n);
  out_.resize(n);
  for (int v = 0; v < n; ++v) {
    a_.push_back(NodeAState::initial(encode_key(net.ids[v]), net.adj[v].size()));
    trackers_[v].record_own(a_[v].own_key);
  }
}

bool MessageSim::all_asleep() const {
  return std::all_of(a_.begin(), a_.end(), [](const NodeAState& s) { return is_asleep(s); });
}

bool MessageSim::step(long round, ARecord* rec) {
  const int n = net_.size();
  bool traffic = false;
  for (int v = 0; v < n; ++v) {
    out_[v] = emit(a_[v]);
    traffic |= out_[v].present;
  }
  for (int v = 0; v < n; ++v) advance_self(a_[v], out_[v]);
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < net_.degree(v); ++i)
      absorb_link(a_[v].views[i], out_[net_.neighbor(v, i)]);
  for (int v = 0; v < n; ++v) {
    const AEvents ev = update_candidate(a_[v]);
    if (ev.key_completed) {
      int source = -1;
      for (int i = 0; i < net_.degree(v); ++i)
        if (a_[v].views[i].participant == a_[v].candidate) {
          source = i;
          break;
        }
      if (source < 0)
        throw protocol_violation("engine: key completed with no completing link");
      trackers_[v].record_arrival(a_[v].candidate, round, source);
    }
  }
  if (rec) {
    rec->sent.resize(n);
    rec->post.resize(n);
    for (int v = 0; v < n; ++v) {
      rec->sent[v] = serialize(out_[v]);
      rec->post[v] = {a_[v].candidate, a_[v].participant, a_[v].corr_sent};
    }
  }
  return traffic;
}

// ---------------------------------------------------------------------------
// CombinedSim

CombinedSim::CombinedSim(const Network& net) : net_(net) {
  const int n = net.size();
  a_.reserve(n);
  bc_.reserve(n);
  trackers_.resize(n);
  final_stage_.assign(n, -1);
  a_out_.resize(n);
  b_out_.resize(n);
  c_out_.resize(n);
  for (int v = 0; v < n; ++v) {
    a_.push_back(NodeAState::initial(encode_key(net.ids[v]), net.adj[v].size()));
    bc_.push_back(NodeBCState::initial(net.adj[v].size()));
    trackers_[v].record_own(a_[v].own_key);
  }
}

bool CombinedSim::all_final() const {
  return std::all_of(bc_.begin(), bc_.end(),
                     [](const NodeBCState& s) { return s.final_state; });
}

bool CombinedSim::step(long stage, StageRecord* rec) {
  const int n = net_.size();
  // Final flags can only flip in the C slot, so "final" is stable across
  // the A and B slots of one stage.

  // --- A slot
  bool traffic = false;
  for (int v = 0; v < n; ++v) {
    a_out_[v] = bc_[v].final_state ? AMessage{} : emit(a_[v]);
    traffic |= a_out_[v].present;
  }
  for (int v = 0; v < n; ++v)
    if (!bc_[v].final_state) advance_self(a_[v], a_out_[v]);
  for (int v = 0; v < n; ++v) {
    if (bc_[v].final_state) continue;
    for (int i = 0; i < net_.degree(v); ++i)
      absorb_link(a_[v].views[i], a_out_[net_.neighbor(v, i)]);
  }
  std::vector<Adoption> adopt(n);
  for (int v = 0; v < n; ++v) {
    if (bc_[v].final_state) continue;
    const AEvents ev = update_candidate(a_[v]);
    refresh_ignoring(bc_[v], a_[v]);
    if (ev.key_completed) {
      int source = -1;
      for (int i = 0; i < net_.degree(v); ++i)
        if (a_[v].views[i].participant == a_[v].candidate) {
          source = i;
          break;
        }
      if (source < 0)
        throw protocol_violation("engine: key completed with no completing link");
      adopt[v] = {true, source, trackers_[v].current_parent()};
      trackers_[v].record_arrival(a_[v].candidate, stage, source);
      // A confirm sent to the old parent must not count for the new one.
      bc_[v].sent_confirm = false;
    }
    if (ev.pl_decreased) apply_reset(bc_[v]);
  }

  // --- B slot
  for (int v = 0; v < n; ++v)
    b_out_[v] = bc_[v].final_state ? std::vector<BTag>(net_.degree(v), BTag::None)
                                   : b_emit(bc_[v], adopt[v], net_.degree(v));
  for (int v = 0; v < n; ++v) {
    if (bc_[v].final_state) continue;
    bc_[v].last_b_empty = true;
    for (int i = 0; i < net_.degree(v); ++i) {
      const Network::Link& l = net_.adj[v][i];
      const BTag tag = b_out_[l.peer][l.peer_index];
      if (tag == BTag::None) continue;
      bc_[v].last_b_empty = false;
      b_absorb(bc_[v], i, tag, nullptr);
    }
  }

  // --- C slot: decide emissions on pre-slot state, then deliver.
  for (int v = 0; v < n; ++v) {
    if (bc_[v].final_state) {
      c_out_[v].assign(net_.degree(v), CTag::None);
      continue;
    }
    const bool lt = local_term(a_[v], bc_[v]);
    c_out_[v] = c_emit(bc_[v], lt, trackers_[v].current_parent());
    if (bc_[v].final_state && final_stage_[v] < 0) final_stage_[v] = stage;
  }
  for (int v = 0; v < n; ++v) {
    if (bc_[v].final_state) continue;  // frozen, including just-now-final
    for (int i = 0; i < net_.degree(v); ++i) {
      const Network::Link& l = net_.adj[v][i];
      c_absorb(bc_[v], i, c_out_[l.peer][l.peer_index], nullptr);
    }
  }

  if (rec) {
    rec->a.sent.resize(n);
    rec->a.post.resize(n);
    BRecord b;
    CRecord c;
    b.tags.resize(n);
    c.tags.resize(n);
    c.final_after.resize(n);
    for (int v = 0; v < n; ++v) {
      rec->a.sent[v] = serialize(a_out_[v]);
      rec->a.post[v] = {a_[v].candidate, a_[v].participant, a_[v].corr_sent};
      b.tags[v].resize(net_.degree(v));
      c.tags[v].resize(net_.degree(v));
      for (int i = 0; i < net_.degree(v); ++i) {
        b.tags[v][i] = static_cast<unsigned char>(b_out_[v][i]);
        c.tags[v][i] = static_cast<unsigned char>(c_out_[v][i]);
      }
      c.final_after[v] = bc_[v].final_state ? 1 : 0;
    }
    rec->b = std::move(b);
    rec->c = std::move(c);
  }
  return traffic;
}

bool CombinedSim::probe_final_node(int node, std::mt19937_64& rng) const {
  if (!bc_[node].final_state) return false;
  NodeAState a = a_[node];
  NodeBCState bc = bc_[node];
  const int deg = net_.degree(node);
  auto coin = [&rng](double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
  };
  bool emitted = false;

  // A slot, exactly as the engine drives one node.
  const AMessage am = bc.final_state ? AMessage{} : emit(a);
  emitted |= am.present;
  if (!bc.final_state) {
    advance_self(a, am);
    for (int i = 0; i < deg; ++i) {
      AMessage in;
      in.present = coin(0.7);
      if (in.present) {
        in.info = coin(0.5) ? '1' : '0';
        in.correction = coin(0.5);
        if (in.correction) {
          in.corr_start = coin(0.5);
          in.corr_end = coin(0.5);
        }
      }
      absorb_link(a.views[i], in);
    }
    update_candidate(a);
  }

  // B slot.
  if (!bc.final_state) {
    const std::vector<BTag> bt = b_emit(bc, Adoption{}, deg);
    for (BTag t : bt) emitted |= t != BTag::None;
    bc.last_b_empty = true;
    for (int i = 0; i < deg; ++i) {
      const int r = static_cast<int>(rng() % 3);
      const BTag tag = static_cast<BTag>(r);
      if (tag == BTag::None) continue;
      bc.last_b_empty = false;
      b_absorb(bc, i, tag, nullptr);
    }
  }

  // C slot.
  if (!bc.final_state) {
    const std::vector<CTag> ct = c_emit(bc, local_term(a, bc), trackers_[node].current_parent());
    for (CTag t : ct) emitted |= t != CTag::None;
  }
  if (!bc.final_state)
    for (int i = 0; i < deg; ++i) c_absorb(bc, i, static_cast<CTag>(rng() % 3), nullptr);

  return !emitted && a == a_[node] && bc == bc_[node];
}

// ---------------------------------------------------------------------------
// BaselineSim

BaselineSim::BaselineSim(const Network& net) : net_(net) {
  const int n = net.size();
  b_.reserve(n);
  out_.resize(n);
  for (int v = 0; v < n; ++v)
    b_.push_back(BaselineNode::initial(encode_key(net.ids[v]), net.adj[v].size()));
}

bool BaselineSim::all_asleep() const {
  return std::all_of(b_.begin(), b_.end(),
                     [](const BaselineNode& s) { return baseline_asleep(s); });
}

bool BaselineSim::step(long round, ARecord* rec) {
  (void)round;
  const int n = net_.size();
  bool traffic = false;
  for (int v = 0; v < n; ++v) {
    out_[v] = baseline_emit(b_[v]);
    traffic |= out_[v].present;
  }
  for (int v = 0; v < n; ++v) baseline_advance(b_[v], out_[v]);
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < net_.degree(v); ++i)
      baseline_absorb(b_[v], i, out_[net_.neighbor(v, i)]);
  for (int v = 0; v < n; ++v) baseline_update_candidate(b_[v]);
  if (rec) {
    rec->sent.resize(n);
    rec->post.resize(n);
    for (int v = 0; v < n; ++v) {
      rec->sent[v] = serialize(out_[v]);
      rec->post[v] = {b_[v].candidate, b_[v].candidate.substr(0, b_[v].sent), Bits{}};
    }
  }
  return traffic;
}

// ---------------------------------------------------------------------------
// run

namespace {

RunResult run_single_node(const Network& net, const RunConfig& cfg) {
  // A degree-0 node has nobody to talk to; it is terminal immediately with
  // its own identifier as the result.
  RunResult r;
  r.trace.variant = cfg.variant;
  r.trace.net = net;
  r.trace.seed = cfg.seed;
  r.trace.light = !cfg.record;
  r.trace.stages_run = 0;
  r.trace.termination_round = 0;
  r.trace.a_quiesce_stage = 1;
  r.k_min = encode_key(net.ids[0]);
  r.trackers.resize(1);
  r.trackers[0].record_own(r.k_min);
  if (cfg.variant == Variant::Baseline) {
    BaselineNode b = BaselineNode::initial(r.k_min, 0);
    b.sent = b.candidate.size();
    r.final_baseline.push_back(std::move(b));
  } else {
    NodeAState a = NodeAState::initial(r.k_min, 0);
    a.participant = a.candidate;
    r.final_a.push_back(std::move(a));
  }
  if (cfg.variant == Variant::ProcessorTerminating) {
    NodeBCState bc = NodeBCState::initial(0);
    bc.final_state = true;
    r.final_bc.push_back(std::move(bc));
    r.final_stage.assign(1, 0);
    r.trace.final_stage = r.final_stage;
  }
  return r;
}

}  // namespace

RunResult run(const Network& net, const RunConfig& cfg) {
  net.validate();
  if (net.size() == 1) return run_single_node(net, cfg);

  RunResult r;
  r.k_min = encode_key(oracle_min_id(net));
  const long budget = cfg.round_budget > 0
                          ? cfg.round_budget
                          : default_round_budget(cfg.variant, r.k_min.size(), net.diameter());
  r.trace.variant = cfg.variant;
  r.trace.net = net;
  r.trace.seed = cfg.seed;
  r.trace.light = !cfg.record;

  if (cfg.variant == Variant::MessageTerminating) {
    MessageSim sim(net);
    long round = 0;
    while (!sim.all_asleep()) {
      if (round >= budget) throw timeout_error(budget, std::move(r.trace));
      ++round;
      StageRecord st;
      sim.step(round, cfg.record ? &st.a : nullptr);
      if (cfg.record) r.trace.stages.push_back(std::move(st));
    }
    r.trace.stages_run = round;
    r.trace.termination_round = round;  // every pre-quiescence round has traffic
    r.trace.a_quiesce_stage = round + 1;
    r.termination_round = round;
    r.stages = round;
    r.a_quiesce_stage = round + 1;
    r.trackers = sim.trackers();
    r.final_a = sim.states();
    return r;
  }

  if (cfg.variant == Variant::Baseline) {
    BaselineSim sim(net);
    long round = 0;
    while (!sim.all_asleep()) {
      if (round >= budget) throw timeout_error(budget, std::move(r.trace));
      ++round;
      StageRecord st;
      sim.step(round, cfg.record ? &st.a : nullptr);
      if (cfg.record) r.trace.stages.push_back(std::move(st));
    }
    r.trace.stages_run = round;
    r.trace.termination_round = round;
    r.trace.a_quiesce_stage = round + 1;
    r.termination_round = round;
    r.stages = round;
    r.a_quiesce_stage = round + 1;
    r.final_baseline = sim.states();
    return r;
  }

  auto sim = std::make_shared<CombinedSim>(net);
  long stage = 0, last_a_traffic = 0;
  while (!sim->all_final()) {
    if (stage >= budget) throw timeout_error(budget, std::move(r.trace));
    ++stage;
    StageRecord st;
    if (sim->step(stage, cfg.record ? &st : nullptr)) last_a_traffic = stage;
    if (cfg.record) r.trace.stages.push_back(std::move(st));
  }
  r.trace.stages_run = stage;
  r.trace.termination_round = 3 * stage;
  r.trace.a_quiesce_stage = last_a_traffic + 1;
  r.trace.final_stage = sim->final_stage();
  r.termination_round = 3 * stage;
  r.stages = stage;
  r.a_quiesce_stage = last_a_traffic + 1;
  r.trackers = sim->trackers();
  r.final_a = sim->a_states();
  r.final_bc = sim->bc_states();
  r.final_stage = sim->final_stage();
  r.combined = std::move(sim);
  return r;
}

Identifier extract_min(const RunResult& r, int node) {
  const Bits& cand = r.trace.variant == Variant::Baseline
                         ? r.final_baseline.at(node).candidate
                         : r.final_a.at(node).candidate;
  if (!is_complete_key(cand))
    throw protocol_violation("extract_min: final candidate is not a complete key");
  return decode_key(cand);
}

int leader_flag(const RunResult& r, int node) {
  return r.trace.net.ids.at(node) == extract_min(r, node) ? 1 : 0;
}

Identifier oracle_min_id(const Network& net) {
  const Identifier* best = &net.ids.at(0);
  for (const Identifier& id : net.ids)
    if (shortlex_compare(id, *best) == Ord::Less) best = &id;
  return *best;
}

void oracle_tree_check(const RootedTree& tree, const Network& net) {
  const int n = net.size();
  if (tree.root < 0 || tree.root >= n) throw protocol_violation("tree oracle: no root");
  if (net.ids[tree.root] != oracle_min_id(net))
    throw protocol_violation("tree oracle: root is not the shortlex-minimal node");
  int edges = 0;
  for (int v = 0; v < n; ++v) {
    if (!tree.member[v]) throw protocol_violation("tree oracle: tree does not span");
    if (v == tree.root) {
      if (tree.parent[v] != -1) throw protocol_violation("tree oracle: root has a parent");
      continue;
    }
    const int p = tree.parent[v];
    if (p < 0 || p >= n) throw protocol_violation("tree oracle: missing parent");
    bool adjacent = false;
    for (const Network::Link& l : net.adj[v]) adjacent |= l.peer == p;
    if (!adjacent) throw protocol_violation("tree oracle: parent edge not in the graph");
    ++edges;
  }
  if (edges != n - 1) throw protocol_violation("tree oracle: edge count != n-1");
  for (int s = 0; s < n; ++s) {
    int v = s, hops = 0;
    while (v != tree.root) {
      v = tree.parent[v];
      if (v < 0 || ++hops > n) throw protocol_violation("tree oracle: cycle or dead end");
    }
  }
}

DelayReport delays(const Trace& trace) {
  DelayReport rep;
  const int n = trace.net.size();
  rep.max_delay.assign(n, -1);
  if (trace.light || n == 0) return rep;
  const Key k_min = encode_key(oracle_min_id(trace.net));
  rep.kmin_len = k_min.size();
  std::vector<char> reached(n, 0);
  std::vector<long> last(n, 0);  // delta(0,v) = 0 since P(0) = lambda
  for (int v = 0; v < n; ++v) rep.max_delay[v] = 0;
  for (std::size_t s = 0; s < trace.stages.size(); ++s) {
    const long t = static_cast<long>(s) + 1;
    for (int v = 0; v < n; ++v) {
      if (reached[v]) continue;
      const Bits& p = trace.stages[s].a.post[v].participant;
      if (p == k_min) {
        reached[v] = 1;
        continue;
      }
      const long d = t - static_cast<long>(lcp_len(k_min, p));
      if (d < last[v]) rep.nondecreasing = false;
      last[v] = d;
      rep.max_delay[v] = std::max(rep.max_delay[v], d);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// verify_trace

namespace {

class TraceChecker {
 public:
  explicit TraceChecker(const Trace& trace) : trace_(trace), net_(trace.net) {}

  std::vector<Violation> check() {
    try {
      net_.validate();
    } catch (const std::exception& e) {
      flag(0, -1, std::string("network: ") + e.what());
      return out_;
    }
    if (trace_.light) return out_;  // nothing recorded to check
    n_ = net_.size();
    k_min_ = encode_key(oracle_min_id(net_));
    if (trace_.variant == Variant::Baseline) {
      check_baseline();
      return out_;
    }
    combined_ = trace_.variant == Variant::ProcessorTerminating;
    init_states();
    for (std::size_t s = 0; s < trace_.stages.size(); ++s) {
      if (!check_stage(s)) return out_;
      if (out_.size() > 50) return out_;
    }
    check_forest_history();
    check_delays();
    check_terminal_state();
    return out_;
  }

 private:
  void flag(long stage, int node, std::string what) {
    out_.push_back({stage, node, std::move(what)});
  }

  bool sizes_ok(const StageRecord& st, long round) {
    if (st.a.sent.size() != static_cast<std::size_t>(n_) ||
        st.a.post.size() != static_cast<std::size_t>(n_)) {
      flag(round, -1, "malformed A record");
      return false;
    }
    if (combined_ && (!st.b || !st.c)) {
      flag(round, -1, "slot discipline: combined trace missing B/C record");
      return false;
    }
    if (!combined_ && (st.b || st.c)) {
      flag(round, -1, "slot discipline: B/C record in a message-terminating trace");
      return false;
    }
    if (combined_) {
      if (st.b->tags.size() != static_cast<std::size_t>(n_) ||
          st.c->tags.size() != static_cast<std::size_t>(n_) ||
          st.c->final_after.size() != static_cast<std::size_t>(n_)) {
        flag(round, -1, "malformed B/C record");
        return false;
      }
      for (int v = 0; v < n_; ++v)
        if (st.b->tags[v].size() != static_cast<std::size_t>(net_.degree(v)) ||
            st.c->tags[v].size() != static_cast<std::size_t>(net_.degree(v))) {
          flag(round, v, "malformed per-link tag record");
          return false;
        }
    }
    return true;
  }

  void init_states() {
    a_.clear();
    bc_.clear();
    trackers_.assign(n_, {});
    final_.assign(n_, 0);
    prev_cand_.resize(n_);
    maxima_.assign(n_, {});
    lcp_c_.assign(n_, 0);
    lcp_p_.assign(n_, 0);
    reached_.assign(n_, 0);
    last_delay_.assign(n_, 0);
    max_delay_.assign(n_, 0);
    cache_c_.assign(n_, 0);
    cache_p_.assign(n_, 0);
    conf_key_.resize(n_);
    for (int v = 0; v < n_; ++v) {
      a_.push_back(NodeAState::initial(encode_key(net_.ids[v]), net_.adj[v].size()));
      bc_.push_back(NodeBCState::initial(net_.adj[v].size()));
      trackers_[v].record_own(a_[v].own_key);
      prev_cand_[v] = a_[v].own_key;
      maxima_[v].push_back(a_[v].own_key);
      lcp_c_[v] = lcp_len(k_min_, a_[v].own_key);
      conf_key_[v].assign(net_.adj[v].size(), Bits{});
    }
  }

  // True when s is a prefix of some network key; remembers the last witness.
  bool prefix_of_some_key(const Bits& s, int* cache) {
    if (is_prefix_of(s, a_[*cache].own_key)) return true;
    for (int v = 0; v < n_; ++v)
      if (is_prefix_of(s, a_[v].own_key)) {
        *cache = v;
        return true;
      }
    return false;
  }

  bool check_stage(std::size_t s) {
    const StageRecord& st = trace_.stages[s];
    const long round = static_cast<long>(s) + 1;
    if (!sizes_ok(st, round)) return false;

    // --- Replay the A slot against the recorded messages.
    std::vector<AMessage> msgs(n_);
    for (int v = 0; v < n_; ++v) {
      try {
        msgs[v] = parse_a_message(st.a.sent[v]);
      } catch (const std::exception& e) {
        flag(round, v, std::string("unparseable A message: ") + e.what());
        return false;
      }
      const AMessage expected = final_[v] ? AMessage{} : emit(a_[v]);
      if (!(msgs[v] == expected)) {
        flag(round, v, "A message does not replay from the previous state");
        return false;
      }
    }
    for (int v = 0; v < n_; ++v)
      if (!final_[v]) advance_self(a_[v], msgs[v]);
    for (int v = 0; v < n_; ++v) {
      if (final_[v]) continue;
      for (int i = 0; i < net_.degree(v); ++i) {
        try {
          absorb_link(a_[v].views[i], msgs[net_.neighbor(v, i)]);
        } catch (const std::exception& e) {
          flag(round, v, std::string("absorb failed: ") + e.what());
          return false;
        }
      }
    }
    std::vector<Adoption> adopt(n_);
    for (int v = 0; v < n_; ++v) {
      if (final_[v]) continue;
      const AEvents ev = update_candidate(a_[v]);
      refresh_ignoring(bc_[v], a_[v]);
      if (ev.key_completed) {
        int source = -1;
        for (int i = 0; i < net_.degree(v); ++i)
          if (a_[v].views[i].participant == a_[v].candidate) {
            source = i;
            break;
          }
        if (source < 0) {
          flag(round, v, "completed key with no completing link");
          return false;
        }
        adopt[v] = {true, source, trackers_[v].current_parent()};
        trackers_[v].record_arrival(a_[v].candidate, round, source);
        bc_[v].sent_confirm = false;
      }
      if (ev.pl_decreased) apply_reset(bc_[v]);
    }
    for (int v = 0; v < n_; ++v) {
      const NodeSnap replayed{a_[v].candidate, a_[v].participant, a_[v].corr_sent};
      if (!(replayed == st.a.post[v])) {
        flag(round, v, "recorded post-round state does not replay");
        return false;
      }
    }

    // --- Observer invariants on the recorded snapshots.
    for (int v = 0; v < n_; ++v) {
      const NodeSnap& ns = st.a.post[v];
      if (ns.candidate != prev_cand_[v]) {
        switch (pl_compare(ns.candidate, prev_cand_[v])) {
          case PlCmp::Less:
            maxima_[v].push_back(ns.candidate);
            break;
          case PlCmp::RightIsPrefix:  // extension
            maxima_[v].back() = ns.candidate;
            break;
          default:
            flag(round, v, "candidate neither extended nor PL-decreased");
            break;
        }
        if (prev_cand_[v] == k_min_)
          flag(round, v, "candidate moved away from the minimal key");
        prev_cand_[v] = ns.candidate;
      }
      // Participant is a prefix of some past-or-present candidate.
      bool p_ok = false;
      for (const Bits& m : maxima_[v]) p_ok = p_ok || is_prefix_of(ns.participant, m);
      if (!p_ok) flag(round, v, "participant is not a prefix of any candidate so far");
      // Candidate and participant are prefixes of network keys.
      if (!prefix_of_some_key(ns.candidate, &cache_c_[v]))
        flag(round, v, "candidate is not a prefix of any network key");
      if (!prefix_of_some_key(ns.participant, &cache_p_[v]))
        flag(round, v, "participant is not a prefix of any network key");
      // Dichotomy against the minimal key.
      for (const Bits* p : {&ns.candidate, &ns.participant}) {
        const PlCmp c = pl_compare(*p, k_min_);
        if (c == PlCmp::Less || c == PlCmp::RightIsPrefix)
          flag(round, v, "string below or beyond the minimal key");
      }
      // lcp with the minimal key never shrinks; delays never shrink.
      const std::size_t nc = lcp_len(k_min_, ns.candidate);
      const std::size_t np = lcp_len(k_min_, ns.participant);
      if (nc < lcp_c_[v]) flag(round, v, "lcp(K_min, candidate) decreased");
      if (np < lcp_p_[v]) flag(round, v, "lcp(K_min, participant) decreased");
      lcp_c_[v] = nc;
      lcp_p_[v] = np;
      if (!reached_[v]) {
        if (ns.participant == k_min_) {
          reached_[v] = 1;
        } else {
          const long d = round - static_cast<long>(np);
          if (d < last_delay_[v]) flag(round, v, "delay sequence decreased");
          last_delay_[v] = d;
          max_delay_[v] = std::max(max_delay_[v], d);
        }
      }
    }

    if (!combined_) return true;

    // --- Replay the B slot.
    for (int v = 0; v < n_; ++v) {
      const std::vector<BTag> expected =
          final_[v] ? std::vector<BTag>(net_.degree(v), BTag::None)
                    : b_emit(bc_[v], adopt[v], net_.degree(v));
      for (int i = 0; i < net_.degree(v); ++i) {
        if (st.b->tags[v][i] > 2) {
          flag(round, v, "invalid B tag on the wire");
          return false;
        }
        if (static_cast<BTag>(st.b->tags[v][i]) != expected[i]) {
          flag(round, v, "B message does not replay");
          return false;
        }
      }
    }
    for (int v = 0; v < n_; ++v) {
      if (final_[v]) continue;
      bc_[v].last_b_empty = true;
      for (int i = 0; i < net_.degree(v); ++i) {
        const Network::Link& l = net_.adj[v][i];
        const BTag tag = static_cast<BTag>(st.b->tags[l.peer][l.peer_index]);
        if (tag == BTag::None) continue;
        bc_[v].last_b_empty = false;
        b_absorb(bc_[v], i, tag, nullptr);
      }
    }

    // --- Replay the C slot; on the way, check confirmation freshness:
    // every confirmation counted at use time must still describe the
    // child's current minimal passed key.
    for (int v = 0; v < n_; ++v) {
      if (final_[v]) {
        for (int i = 0; i < net_.degree(v); ++i)
          if (st.c->tags[v][i] != 0) {
            flag(round, v, "final node emitted a C message");
            return false;
          }
        continue;
      }
      const bool lt = local_term(a_[v], bc_[v]);
      const bool was_pending = bc_[v].pending_terminate;
      std::vector<CTag> expected = c_emit(bc_[v], lt, trackers_[v].current_parent());
      bool used_confirms = false;
      for (CTag t : expected) used_confirms |= t != CTag::None;
      if (used_confirms && !was_pending) {
        for (int i = 0; i < net_.degree(v); ++i)
          if (bc_[v].children[i] && bc_[v].confirmed[i] &&
              conf_key_[v][i] != trackers_[net_.neighbor(v, i)].arrivals.back().key)
            flag(round, v, "confirmation used after the child's edge key changed");
      }
      for (int i = 0; i < net_.degree(v); ++i) {
        if (st.c->tags[v][i] > 2) {
          flag(round, v, "invalid C tag on the wire");
          return false;
        }
        if (static_cast<CTag>(st.c->tags[v][i]) != expected[i]) {
          flag(round, v, "C message does not replay");
          return false;
        }
      }
    }
    for (int v = 0; v < n_; ++v) {
      if (bc_[v].final_state) continue;
      for (int i = 0; i < net_.degree(v); ++i) {
        const Network::Link& l = net_.adj[v][i];
        const CTag tag = static_cast<CTag>(st.c->tags[l.peer][l.peer_index]);
        if (tag == CTag::Confirm && !bc_[v].ignoring && bc_[v].children[i])
          conf_key_[v][i] = trackers_[l.peer].arrivals.back().key;
        c_absorb(bc_[v], i, tag, nullptr);
      }
    }
    for (int v = 0; v < n_; ++v) {
      if ((bc_[v].final_state ? 1 : 0) != st.c->final_after[v]) {
        flag(round, v, "recorded final flag does not replay");
        return false;
      }
      final_[v] = bc_[v].final_state ? 1 : 0;
    }
    return true;
  }

  void check_forest_history() {
    std::vector<ParentTracker> arrivals;
    try {
      arrivals = derive_arrivals(trace_);
    } catch (const std::exception& e) {
      flag(0, -1, std::string("forest reconstruction: ") + e.what());
      return;
    }
    // Per-node key sequences: strictly PL-decreasing, births increasing;
    // the source held the key strictly earlier.
    for (int v = 0; v < n_; ++v) {
      const auto& log = arrivals[v].arrivals;
      for (std::size_t i = 1; i < log.size(); ++i) {
        if (log[i].round <= log[i - 1].round)
          flag(log[i].round, v, "birth rounds not increasing");
        if (pl_compare(log[i].key, log[i - 1].key) != PlCmp::Less)
          flag(log[i].round, v, "passed keys not PL-decreasing");
        const int u = net_.neighbor(v, log[i].source_link);
        bool seen_earlier = false;
        for (const KeyArrival& ka : arrivals[u].arrivals)
          if (ka.key == log[i].key && ka.round < log[i].round) {
            seen_earlier = true;
            break;
          }
        if (!seen_earlier)
          flag(log[i].round, v, "source did not hold the key strictly earlier");
      }
    }
    // Gamma(t) is a spanning forest at every round, and (edge key, birth)
    // strictly decreases towards the root.
    for (long r = 0; r <= trace_.stages_run; ++r) {
      ForestSnapshot snap;
      try {
        snap = snapshot_forest(net_, arrivals, r);
        check_forest(snap);
      } catch (const std::exception& e) {
        flag(r, -1, std::string("forest: ") + e.what());
        continue;
      }
      for (int v = 0; v < n_; ++v) {
        const int u = snap.parent_node[v];
        if (u < 0) continue;
        const PlCmp c = pl_compare(*snap.edge_key[u], *snap.edge_key[v]);
        const bool ok =
            c == PlCmp::Less || (c == PlCmp::Equal && snap.birth[u] < snap.birth[v]);
        if (!ok) flag(r, v, "(edge key, birth) not decreasing towards the root");
      }
    }

    if (!combined_) {
      // At quiescence the arrivals describe the spanning tree.
      try {
        const RootedTree tree = extract_spanning_tree(net_, arrivals);
        oracle_tree_check(tree, net_);
        // Depth is bounded by the last birth of the minimal key.
        long last_birth = 0;
        std::vector<long> depth(n_, 0);
        for (int v = 0; v < n_; ++v)
          last_birth = std::max(last_birth, arrivals[v].arrivals.back().round);
        for (int s = 0; s < n_; ++s) {
          long d = 0;
          for (int v = s; v != tree.root; v = tree.parent[v]) ++d;
          if (d > last_birth)
            flag(trace_.stages_run, s, "tree deeper than the last minimal-key birth");
        }
      } catch (const std::exception& e) {
        flag(trace_.stages_run, -1, std::string("spanning tree: ") + e.what());
      }
      return;
    }

    // Combined runs: the first terminate certifies a spanning tree of
    // minimal-key edges.
    long first_term = -1;
    for (std::size_t s = 0; s < trace_.stages.size() && first_term < 0; ++s)
      for (const auto& tags : trace_.stages[s].c->tags)
        for (unsigned char t : tags)
          if (static_cast<CTag>(t) == CTag::Terminate) {
            first_term = static_cast<long>(s) + 1;
            break;
          }
    if (first_term < 0) {
      if (n_ > 1) flag(trace_.stages_run, -1, "no terminate message in a finished run");
      return;
    }
    try {
      const ForestSnapshot snap = snapshot_forest(net_, arrivals, first_term);
      check_forest(snap);
      int roots = 0;
      for (int v = 0; v < n_; ++v) {
        if (snap.parent_node[v] < 0) ++roots;
        if (*snap.edge_key[v] != k_min_)
          flag(first_term, v, "terminate sent before the minimal key spanned");
      }
      if (roots != 1) flag(first_term, -1, "terminate sent while the forest had several roots");
    } catch (const std::exception& e) {
      flag(first_term, -1, std::string("forest at first terminate: ") + e.what());
    }
  }

  void check_delays() {
    // Neighboring delays differ by at most the correction-message length,
    // plus one round for the link latency (a bit sent at round t is only
    // seen by the neighbor's candidate update at round t+1).
    const long bound = static_cast<long>(bin_encode(k_min_.size()).size()) + 1;
    for (const auto& [u, w] : net_.edges)
      if (std::abs(max_delay_[u] - max_delay_[w]) > bound)
        flag(trace_.stages_run, u, "neighbor delay bound exceeded");
  }

  void check_terminal_state() {
    if (trace_.stages.empty()) return;
    const ARecord& last = trace_.stages.back().a;
    for (int v = 0; v < n_; ++v) {
      if (last.post[v].candidate != k_min_)
        flag(trace_.stages_run, v, "final candidate is not the minimal key");
      if (last.post[v].participant != k_min_)
        flag(trace_.stages_run, v, "final participant is not the minimal key");
    }
    if (combined_) {
      if (trace_.final_stage.size() != static_cast<std::size_t>(n_)) {
        flag(trace_.stages_run, -1, "missing final-stage metadata");
        return;
      }
      long first_final = trace_.stages_run + 1;
      for (int v = 0; v < n_; ++v) {
        if (trace_.final_stage[v] < 0) {
          flag(trace_.stages_run, v, "node never reached the final state");
          continue;
        }
        first_final = std::min(first_final, trace_.final_stage[v]);
      }
      // No node finalizes before the flooding traffic has stopped.
      long last_traffic = 0;
      for (std::size_t s = 0; s < trace_.stages.size(); ++s)
        for (int v = 0; v < n_; ++v)
          if (st_present(trace_.stages[s].a.sent[v])) last_traffic = static_cast<long>(s) + 1;
      if (first_final < last_traffic)
        flag(first_final, -1, "a node finalized before flooding quiesced");
      if (trace_.a_quiesce_stage != last_traffic + 1)
        flag(last_traffic, -1, "recorded quiescence stage is wrong");
    }
  }

  static bool st_present(const std::string& wire) {
    return !wire.empty() && wire[0] == '1';
  }

  void check_baseline() {
    std::vector<BaselineNode> b;
    for (int v = 0; v < n_; ++v)
      b.push_back(BaselineNode::initial(encode_key(net_.ids[v]), net_.adj[v].size()));
    std::vector<BaselineMessage> msgs(n_);
    for (std::size_t s = 0; s < trace_.stages.size(); ++s) {
      const StageRecord& st = trace_.stages[s];
      const long round = static_cast<long>(s) + 1;
      if (!sizes_ok(st, round)) return;
      for (int v = 0; v < n_; ++v) {
        try {
          msgs[v] = parse_baseline_message(st.a.sent[v]);
        } catch (const std::exception& e) {
          flag(round, v, std::string("unparseable baseline message: ") + e.what());
          return;
        }
        if (!(msgs[v] == baseline_emit(b[v]))) {
          flag(round, v, "baseline message does not replay");
          return;
        }
      }
      for (int v = 0; v < n_; ++v) baseline_advance(b[v], msgs[v]);
      for (int v = 0; v < n_; ++v)
        for (int i = 0; i < net_.degree(v); ++i)
          baseline_absorb(b[v], i, msgs[net_.neighbor(v, i)]);
      for (int v = 0; v < n_; ++v) baseline_update_candidate(b[v]);
      for (int v = 0; v < n_; ++v) {
        const NodeSnap replayed{b[v].candidate, b[v].candidate.substr(0, b[v].sent), Bits{}};
        if (!(replayed == st.a.post[v])) {
          flag(round, v, "baseline state does not replay");
          return;
        }
      }
    }
    for (int v = 0; v < n_; ++v)
      if (b[v].candidate != k_min_)
        flag(trace_.stages_run, v, "baseline final candidate is not the minimal key");
  }

  const Trace& trace_;
  const Network& net_;
  int n_ = 0;
  bool combined_ = false;
  Key k_min_;
  std::vector<Violation> out_;

  // replay state
  std::vector<NodeAState> a_;
  std::vector<NodeBCState> bc_;
  std::vector<ParentTracker> trackers_;
  std::vector<char> final_;
  std::vector<std::vector<Bits>> conf_key_;

  // observer state
  std::vector<Bits> prev_cand_;
  std::vector<std::vector<Bits>> maxima_;
  std::vector<std::size_t> lcp_c_, lcp_p_;
  std::vector<char> reached_;
  std::vector<long> last_delay_, max_delay_;
  std::vector<int> cache_c_, cache_p_;
};

}  // namespace

std::vector<Violation> verify_trace(const Trace& trace) {
  return TraceChecker(trace).check();
}

}  // namespace minbcast
