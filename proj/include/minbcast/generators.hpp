#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minbcast/network.hpp"
#include "minbcast/trace.hpp"

namespace minbcast {

// Bad experiment parameters (n = 0, identifier space too small, ...).
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Topology { Path, Cycle, Grid, Star, Complete, RandomConnected };
enum class IdScheme { UniformRandom, Adversarial, Explicit };

std::string to_string(Topology t);
Topology topology_from_string(const std::string& s);
std::string to_string(IdScheme s);
IdScheme id_scheme_from_string(const std::string& s);

struct ExperimentConfig {
  Topology topology = Topology::Path;
  int nodes = 2;
  int grid_rows = 0;       // 0: factor pair nearest the square
  double edge_prob = 0.2;  // random-connected only

  IdScheme ids = IdScheme::UniformRandom;
  std::size_t id_min_len = 1;
  std::size_t id_max_len = 16;
  // Adversarial family: every identifier has length adv_len; the minimal
  // one is all zeros and sits at adv_position (-1: node 0); the others
  // share its long zero prefix and differ only in a short tail, so any two
  // keys in the instance diverge as late as possible.
  std::size_t adv_len = 32;
  int adv_position = -1;
  std::vector<Identifier> explicit_ids;

  Variant variant = Variant::MessageTerminating;
  std::uint64_t seed = 0;
  int repetitions = 1;
  long round_budget = -1;
  bool light = false;
};

// Deterministic given the config (including the seed).
Network generate(const ExperimentConfig& cfg);

}  // namespace minbcast
