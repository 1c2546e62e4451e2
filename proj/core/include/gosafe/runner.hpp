// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "gosafe/config.hpp"

namespace gosafe {

struct RunResult {
  ExperimentConfig config;  // effective configuration, as echoed in the log
  long iterations = 0;
  bool done = false;
  long best_pair = -1;
  Eigen::VectorXd best_params;
  double best_lower = 0.0;
  double best_true_reward = 0.0;
  long safe_set_size = 0;
  long violations = 0;     // evaluations whose executed run had hazard < 0
  long interruptions = 0;  // evaluations taken over by the backup
  long failed_remaining = 0;
  long misspecifications = 0;
  long s1_evals = 0, s2_evals = 0, s3_evals = 0;
  std::string output_dir;
};

// Executes one experiment end to end and writes, under cfg.output_dir:
// run_log.jsonl (config echo + one record per iteration, flushed per line),
// reward_curve.csv, safe_set.json, summary.json, and per-evaluation
// trajectory CSVs when enabled. verbosity > 0 reports progress on stderr.
RunResult run_experiment(const ExperimentConfig& cfg, int verbosity = 0);

// Runs each mode with the shared seed into <output_dir>/<mode>/ and writes
// compare.csv (mode, best-guess true reward, iterations, interruptions,
// violations) to output_dir. Returns one RunResult per mode.
std::vector<RunResult> compare_modes(const ExperimentConfig& cfg,
                                     const std::vector<std::string>& modes,
                                     int verbosity = 0);

}  // namespace gosafe
