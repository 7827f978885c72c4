#include "minbcast/trace.hpp"

#include <json.hpp>

namespace minbcast {

namespace {
using nlohmann::json;

json snap_to_json(const NodeSnap& s) {
  return json{{"candidate", s.candidate},
              {"participant", s.participant},
              {"corr_sent", s.corr_sent}};
}

NodeSnap snap_from_json(const json& j) {
  NodeSnap s;
  s.candidate = j.at("candidate").get<std::string>();
  s.participant = j.at("participant").get<std::string>();
  s.corr_sent = j.at("corr_sent").get<std::string>();
  return s;
}
}  // namespace

std::string to_string(Variant v) {
  switch (v) {
    case Variant::MessageTerminating: return "message_terminating";
    case Variant::ProcessorTerminating: return "processor_terminating";
    case Variant::Baseline: return "baseline";
  }
  throw structural_error("unknown protocol variant");
}

Variant variant_from_string(const std::string& s) {
  if (s == "message_terminating") return Variant::MessageTerminating;
  if (s == "processor_terminating") return Variant::ProcessorTerminating;
  if (s == "baseline") return Variant::Baseline;
  throw structural_error("unknown protocol variant: " + s);
}

std::string trace_to_json(const Trace& t) {
  json j;
  j["format"] = "minbcast-trace-v1";
  j["variant"] = to_string(t.variant);
  j["seed"] = t.seed;
  j["light"] = t.light;
  j["ids"] = t.net.ids;
  json edges = json::array();
  for (const auto& [u, v] : t.net.edges) edges.push_back(json::array({u, v}));
  j["edges"] = std::move(edges);
  j["stages_run"] = t.stages_run;
  j["termination_round"] = t.termination_round;
  j["a_quiesce_stage"] = t.a_quiesce_stage;
  j["final_stage"] = t.final_stage;

  json stages = json::array();
  for (const StageRecord& st : t.stages) {
    json js;
    js["a"] = json{{"sent", st.a.sent}, {"post", json::array()}};
    for (const NodeSnap& s : st.a.post) js["a"]["post"].push_back(snap_to_json(s));
    if (st.b) js["b"] = json{{"tags", st.b->tags}};
    if (st.c) js["c"] = json{{"tags", st.c->tags}, {"final_after", st.c->final_after}};
    stages.push_back(std::move(js));
  }
  j["stages"] = std::move(stages);
  return j.dump(1);
}

Trace trace_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw structural_error(std::string("trace: not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "minbcast-trace-v1")
      throw structural_error("trace: unknown format tag");
    Trace t;
    t.variant = variant_from_string(j.at("variant").get<std::string>());
    t.seed = j.at("seed").get<std::uint64_t>();
    t.light = j.at("light").get<bool>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges"))
      edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    t.net = Network::from_edges(j.at("ids").get<std::vector<std::string>>(),
                                std::move(edges));
    t.net.validate();
    t.stages_run = j.at("stages_run").get<long>();
    t.termination_round = j.at("termination_round").get<long>();
    t.a_quiesce_stage = j.at("a_quiesce_stage").get<long>();
    t.final_stage = j.at("final_stage").get<std::vector<long>>();
    for (const auto& js : j.at("stages")) {
      StageRecord st;
      st.a.sent = js.at("a").at("sent").get<std::vector<std::string>>();
      for (const auto& s : js.at("a").at("post")) st.a.post.push_back(snap_from_json(s));
      if (js.contains("b")) {
        BRecord b;
        b.tags = js.at("b").at("tags").get<std::vector<std::vector<unsigned char>>>();
        st.b = std::move(b);
      }
      if (js.contains("c")) {
        CRecord c;
        c.tags = js.at("c").at("tags").get<std::vector<std::vector<unsigned char>>>();
        c.final_after = js.at("c").at("final_after").get<std::vector<unsigned char>>();
        st.c = std::move(c);
      }
      t.stages.push_back(std::move(st));
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw structural_error(std::string("trace: bad field: ") + e.what());
  }
}

}  // namespace minbcast
