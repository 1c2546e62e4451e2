// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gosafe/beta.hpp"
#include "gosafe/gp.hpp"
#include "gosafe/grid.hpp"
#include "gosafe/kernel.hpp"
#include "gosafe/optimizer.hpp"
#include "gosafe/rollout.hpp"
#include "gosafe/system.hpp"

namespace gosafe {

struct KernelConfig {
  KernelFamily family = KernelFamily::kMatern32;
  double variance = 1.0;
  std::vector<double> lengthscales;
};

struct BetaConfig {
  std::string mode = "constant";  // "constant" | "theoretical"
  double value = 3.0;             // constant mode
  double bound = 1.0;             // theoretical mode: RKHS norm bound
  double sigma = 0.1;
  double delta = 0.05;
  double gamma_coeff = 0.0;  // gamma(m) = gamma_coeff * ln(1 + m)
};

struct SeedPairConfig {
  std::vector<double> param;
  std::vector<double> state;
};

// Fully resolved experiment description. Parsing fills optional fields from
// the benchmark's defaults, so a parsed config serializes with every value
// explicit and round-trips to itself.
struct ExperimentConfig {
  std::string benchmark;  // "poly1d" | "pendulum"
  unsigned long long seed = 0;
  std::string mode = "gosafe";  // "gosafe" | "safeopt"
  std::string output_dir = "out";

  std::vector<Axis> param_axes;
  std::vector<Axis> state_axes;
  std::vector<double> state_lo, state_hi;
  double mu = 0.0;

  double noise_std = 0.0;
  std::vector<KernelConfig> models;  // index 0 reward, 1.. constraints
  BetaConfig beta;

  double L_a = 0.0, L_x = 0.0;
  double epsilon = 0.05;
  double eta = 0.0;

  long s1_budget = 0, s2_budget = 0, s3_budget = 0;
  long max_iterations = 1000;
  bool practical_mode = true;
  bool record_failures_in_gp = true;

  double horizon = 0.0, dt = 0.0, monitor_hz = 0.0;

  std::vector<SeedPairConfig> initial_safe;
  std::vector<double> nominal_state;

  bool export_trajectories = false;
  bool confidence_trigger_enabled = false;
  double confidence_threshold = 0.0;
};

// Strict parsing: unknown keys, missing required fields, and out-of-range
// values raise ConfigError with the offending key path.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

// Builders from a validated config.
std::unique_ptr<SystemModel> build_system(const ExperimentConfig& cfg);
GridDomain build_domain(const ExperimentConfig& cfg);
SurrogateModel build_surrogate(const ExperimentConfig& cfg);
BetaSchedule build_beta(const ExperimentConfig& cfg);
LipschitzConfig build_lipschitz(const ExperimentConfig& cfg);
RolloutSettings build_rollout_settings(const ExperimentConfig& cfg);
OptimizerSettings build_optimizer_settings(const ExperimentConfig& cfg,
                                           const GridDomain& domain);

}  // namespace gosafe
