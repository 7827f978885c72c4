// Command-line front end: graph/id generation, runs with invariant
// checking, trace verification, exports, and the scaling study.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "minbcast/engine.hpp"
#include "minbcast/forest.hpp"
#include "minbcast/generators.hpp"
#include "minbcast/suite.hpp"
#include "minbcast/trace.hpp"

namespace {

using namespace minbcast;

std::string topology_name;  // CLI string targets, mapped after parse
std::string ids_name;
std::string variant_name;

void add_experiment_flags(CLI::App* cmd, ExperimentConfig& cfg) {
  topology_name = "path";
  ids_name = "uniform";
  variant_name = "message_terminating";
  cmd->add_option("--topology", topology_name,
                  "path | cycle | grid | star | complete | random")
      ->capture_default_str();
  cmd->add_option("-n,--nodes", cfg.nodes, "node count")->capture_default_str();
  cmd->add_option("--grid-rows", cfg.grid_rows, "grid rows (0 = near-square)");
  cmd->add_option("--edge-prob", cfg.edge_prob, "edge probability (random topology)")
      ->capture_default_str();
  cmd->add_option("--ids", ids_name, "uniform | adversarial | explicit")
      ->capture_default_str();
  cmd->add_option("--id-min", cfg.id_min_len, "minimal identifier length")
      ->capture_default_str();
  cmd->add_option("--id-max", cfg.id_max_len, "maximal identifier length")
      ->capture_default_str();
  cmd->add_option("--adv-len", cfg.adv_len, "identifier length of the adversarial family")
      ->capture_default_str();
  cmd->add_option("--adv-pos", cfg.adv_position,
                  "node index of the minimal adversarial identifier (-1 = node 0)");
  cmd->add_option("--id", cfg.explicit_ids,
                  "explicit identifier (repeatable, binary string; use with --ids explicit)");
  cmd->add_option("--variant", variant_name,
                  "message_terminating | processor_terminating | baseline")
      ->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  cmd->add_option("--repetitions", cfg.repetitions, "independent runs with derived seeds")
      ->capture_default_str();
  cmd->add_option("--budget", cfg.round_budget, "round budget override (-1 = default)");
  cmd->add_flag("--light", cfg.light, "skip per-round trace recording (large sweeps)");
}

void finish_experiment_flags(ExperimentConfig& cfg) {
  cfg.topology = topology_from_string(topology_name);
  cfg.ids = id_scheme_from_string(ids_name);
  cfg.variant = variant_from_string(variant_name);
}

std::filesystem::path resolve_out(const std::string& out_dir, const std::string& path) {
  std::filesystem::path p(path);
  if (!out_dir.empty() && p.is_relative()) return std::filesystem::path(out_dir) / p;
  return p;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open for reading: " + path.string());
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string network_to_json(const Network& net) {
  nlohmann::json j;
  j["ids"] = net.ids;
  j["edges"] = nlohmann::json::array();
  for (const auto& [u, v] : net.edges) j["edges"].push_back({u, v});
  return j.dump(1);
}

RootedTree tree_from_trace(const Trace& trace, std::vector<ParentTracker>* out_arrivals) {
  auto arrivals = derive_arrivals(trace);
  RootedTree tree = extract_spanning_tree(trace.net, arrivals);
  if (out_arrivals) *out_arrivals = std::move(arrivals);
  return tree;
}

int cmd_generate(const ExperimentConfig& cfg, const std::string& out_dir,
                 const std::string& out, bool dot) {
  const Network net = generate(cfg);
  if (dot) {
    // Plain graph rendering (no tree yet): list nodes and edges.
    std::ostringstream s;
    s << "graph network {\n";
    for (int v = 0; v < net.size(); ++v)
      s << "  n" << v << " [label=\"" << (net.ids[v].empty() ? "(empty)" : net.ids[v])
        << "\"];\n";
    for (const auto& [u, v] : net.edges) s << "  n" << u << " -- n" << v << ";\n";
    s << "}\n";
    write_file(resolve_out(out_dir, out), s.str());
  } else {
    write_file(resolve_out(out_dir, out), network_to_json(net) + "\n");
  }
  std::cerr << "generated " << to_string(cfg.topology) << " n=" << net.size()
            << " edges=" << net.edges.size() << " diameter=" << net.diameter() << "\n";
  return 0;
}

int cmd_run(const ExperimentConfig& cfg, const std::string& out_dir,
            const std::string& trace_out, const std::string& tree_out) {
  // The suite path performs the full checking battery (trace invariants,
  // result oracles, determinism) and aggregates over repetitions.
  const SuiteOutcome outcome = run_suite(cfg);
  std::cout << "runs=" << outcome.runs << " failed=" << outcome.failed
            << " rounds[min/mean/max]=" << outcome.min_rounds << "/" << outcome.mean_rounds
            << "/" << outcome.max_rounds << " max_delay=" << outcome.max_delay
            << " max_tree_depth=" << outcome.max_tree_depth << "\n";
  for (const std::string& f : outcome.failures) std::cout << "FAIL " << f << "\n";

  if (!trace_out.empty() || !tree_out.empty()) {
    const Network net = generate(cfg);
    RunConfig rc;
    rc.variant = cfg.variant;
    rc.round_budget = cfg.round_budget;
    rc.record = true;
    rc.seed = cfg.seed;
    const RunResult r = run(net, rc);
    if (!trace_out.empty())
      write_file(resolve_out(out_dir, trace_out), trace_to_json(r.trace) + "\n");
    if (!tree_out.empty()) {
      if (cfg.variant == Variant::Baseline)
        throw std::runtime_error("the baseline does not build a spanning tree");
      const RootedTree tree = extract_spanning_tree(net, r.trackers);
      write_file(resolve_out(out_dir, tree_out), tree_to_dot(net, tree));
    }
  }
  return outcome.failed == 0 ? 0 : 1;
}

int cmd_verify(const std::string& trace_path) {
  const Trace trace = trace_from_json(read_file(trace_path));
  const auto violations = verify_trace(trace);
  if (violations.empty()) {
    std::cout << "OK: " << trace.stages.size() << " recorded rounds, "
              << trace.net.size() << " nodes, no violations\n";
    return 0;
  }
  for (const Violation& v : violations)
    std::cout << "VIOLATION round " << v.stage << " node " << v.node << ": " << v.what
              << "\n";
  return 1;
}

int cmd_export(const std::string& trace_path, const std::string& format,
               const std::string& out_dir, const std::string& out) {
  const Trace trace = trace_from_json(read_file(trace_path));
  if (format == "trace-json") {
    write_file(resolve_out(out_dir, out), trace_to_json(trace) + "\n");
  } else if (format == "tree-dot") {
    const RootedTree tree = tree_from_trace(trace, nullptr);
    write_file(resolve_out(out_dir, out), tree_to_dot(trace.net, tree));
  } else if (format == "summary-csv") {
    const DelayReport dr = delays(trace);
    long max_delay = 0;
    for (long d : dr.max_delay) max_delay = std::max(max_delay, d);
    std::ostringstream s;
    s << "variant,nodes,edges,diameter,rounds,kmin_len,max_delay\n";
    s << to_string(trace.variant) << ',' << trace.net.size() << ',' << trace.net.edges.size()
      << ',' << trace.net.diameter() << ',' << trace.termination_round << ',' << dr.kmin_len
      << ',' << max_delay << '\n';
    write_file(resolve_out(out_dir, out), s.str());
  } else {
    throw std::runtime_error("unknown export format: " + format);
  }
  return 0;
}

int cmd_bench(const std::string& out_dir, const std::string& out, bool baseline_everywhere) {
  const auto points = run_scaling_bench(baseline_everywhere);
  const std::string csv = bench_to_csv(points);
  write_file(resolve_out(out_dir, out), csv);
  if (out != "-") std::cout << csv;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic simulator for minimal-identifier broadcast and "
               "spanning-tree construction"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI/TOML file");

  std::string out_dir;
  app.add_option("--output-dir", out_dir, "directory for relative output paths")
      ->envname("MINBCAST_OUT");

  ExperimentConfig cfg;

  auto* gen = app.add_subcommand("generate", "generate a network and print/write it");
  std::string gen_out = "-";
  bool gen_dot = false;
  add_experiment_flags(gen, cfg);
  gen->add_option("-o,--out", gen_out, "output path (- = stdout)")->capture_default_str();
  gen->add_flag("--dot", gen_dot, "emit Graphviz instead of JSON");

  auto* runc = app.add_subcommand("run", "run experiments with full checking");
  std::string trace_out, tree_out;
  add_experiment_flags(runc, cfg);
  runc->add_option("--trace-out", trace_out, "also write one recorded trace (JSON)");
  runc->add_option("--tree-out", tree_out, "also write the spanning tree (DOT)");

  auto* ver = app.add_subcommand("verify", "check a recorded trace against every invariant");
  std::string verify_path;
  ver->add_option("trace", verify_path, "trace JSON file")->required();

  auto* exp = app.add_subcommand("export", "convert a recorded trace");
  std::string export_path, export_format = "summary-csv", export_out = "-";
  exp->add_option("trace", export_path, "trace JSON file")->required();
  exp->add_option("--format", export_format, "trace-json | tree-dot | summary-csv")
      ->capture_default_str();
  exp->add_option("-o,--out", export_out, "output path (- = stdout)")->capture_default_str();

  auto* bench = app.add_subcommand("bench", "adversarial-ring scaling study vs the baseline");
  std::string bench_out = "-";
  bool baseline_everywhere = false;
  bench->add_option("-o,--out", bench_out, "CSV output path (- = stdout)")
      ->capture_default_str();
  bench->add_flag("--baseline-everywhere", baseline_everywhere,
                  "run the baseline at every grid point (slow)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed() || runc->parsed()) finish_experiment_flags(cfg);
    if (gen->parsed()) return cmd_generate(cfg, out_dir, gen_out, gen_dot);
    if (runc->parsed()) return cmd_run(cfg, out_dir, trace_out, tree_out);
    if (ver->parsed()) return cmd_verify(verify_path);
    if (exp->parsed()) return cmd_export(export_path, export_format, out_dir, export_out);
    if (bench->parsed()) return cmd_bench(out_dir, bench_out, baseline_everywhere);
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
