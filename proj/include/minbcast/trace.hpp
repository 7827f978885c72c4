#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minbcast/bits.hpp"
#include "minbcast/network.hpp"

namespace minbcast {

enum class Variant { MessageTerminating, ProcessorTerminating, Baseline };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

// State of one node after a round, as recorded in traces. The baseline
// reuses the same shape with its streamed prefix in `participant` and an
// always-empty `corr_sent`.
struct NodeSnap {
  Bits candidate;
  Bits participant;
  Bits corr_sent;

  bool operator==(const NodeSnap&) const = default;
};

// One A round: the broadcast message each node sent (serialized bits,
// "0" = empty) and the post-round node states.
struct ARecord {
  std::vector<std::string> sent;
  std::vector<NodeSnap> post;

  bool operator==(const ARecord&) const = default;
};

// One B round: the tag each node sent on each of its links.
struct BRecord {
  std::vector<std::vector<unsigned char>> tags;  // BTag values

  bool operator==(const BRecord&) const = default;
};

// One C round: tags per node per link, plus which nodes are final after.
struct CRecord {
  std::vector<std::vector<unsigned char>> tags;  // CTag values
  std::vector<unsigned char> final_after;

  bool operator==(const CRecord&) const = default;
};

// One stage: an A round, plus B and C rounds for combined runs.
struct StageRecord {
  ARecord a;
  std::optional<BRecord> b;
  std::optional<CRecord> c;

  bool operator==(const StageRecord&) const = default;
};

struct Trace {
  Variant variant = Variant::MessageTerminating;
  Network net;
  std::uint64_t seed = 0;
  bool light = false;  // per-round records omitted (large sweeps)

  std::vector<StageRecord> stages;  // stage t at index t-1
  long stages_run = 0;
  long termination_round = 0;  // rounds; 3x stages for combined runs
  long a_quiesce_stage = 0;    // first stage from which the A slot stays silent
  std::vector<long> final_stage;  // combined: stage a node went final, -1 never

  bool operator==(const Trace&) const = default;
};

// Self-describing JSON serialization, documented in the README.
std::string trace_to_json(const Trace& t);
Trace trace_from_json(const std::string& json);

}  // namespace minbcast
