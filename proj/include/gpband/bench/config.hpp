// SPDX-License-Identifier: MIT
// Experiment configuration: parsing, canonical serialization, and hashing.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpband/kernel.hpp"

namespace gpband::bench {

struct KernelSpec {
  std::string family;  // se | matern12 | matern32 | matern52 | rq | triangle | product | sum
  std::size_t dims = 1;
  double lengthscale = 1.0;
  double variance = 1.0;
  double c1 = 1.0, c2 = 1.0;  // rational-quadratic shape parameters
  std::size_t offset = 0;     // first input coordinate this block reads
  std::vector<KernelSpec> parts;  // for product / sum
};

struct EnvSpec {
  std::string kind;  // grid_gp | contextual_gp | toy1 | toy2
  KernelSpec kernel;
  std::vector<double> lower, upper;
  double sigma = 0.1;
  std::size_t grid_res = 256;
  double delta = 0.05;          // toys
  std::size_t toy_budget = 10;  // toy2 coefficient budget
  std::size_t context_dims = 0;
};

struct ExperimentConfig {
  std::string algorithm;  // tree | zoom | contextual | gp_ucb | random | toy2_oracle
  std::size_t budget = 50;
  std::size_t n0 = 0;  // > 0 switches tree/zoom to the doubling-trick variant
  std::vector<std::uint64_t> seeds;
  double u = 2.0;
  double theory_scale = 1.0;
  unsigned n_split = 3;
  std::size_t baseline_grid_res = 256;  // gp_ucb grid resolution
  EnvSpec env;
  std::string output = "out";
};

/// Parses a JSON config; throws std::invalid_argument naming the offending or
/// unknown key on any problem.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

/// Canonical serialization: keys sorted, lossless doubles. parse(dump(c))
/// reproduces c exactly.
std::string dump_config(const ExperimentConfig& cfg);

/// FNV-1a 64-bit hash of the canonical serialization, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

Kernel build_kernel(const KernelSpec& spec);

}  // namespace gpband::bench
