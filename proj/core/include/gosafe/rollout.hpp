// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include "gosafe/confidence.hpp"
#include "gosafe/grid.hpp"
#include "gosafe/safe_sets.hpp"
#include "gosafe/system.hpp"

namespace gosafe {

struct RolloutSettings {
  double horizon = 0.0;
  double dt = 0.0;
  double monitor_period = 0.0;
  double eta = 0.0;  // trigger radius around border states, raw units
  // Optional extra trigger: interrupt when some constraint lower bound at
  // the current quantized pair falls below confidence_threshold.
  bool use_confidence_trigger = false;
  double confidence_threshold = 0.0;
};

struct RolloutRecord {
  Trajectory trajectory;
  bool interrupted = false;
  double switch_time = -1.0;
  Eigen::VectorXd x_fail;         // raw state at the switch
  Eigen::VectorXd backup_params;  // policy that finished the run
  long backup_pair = -1;          // (backup param, switch state) pair id
  Observation observation;        // of the executed trajectory
  double hazard = 0.0;            // min state hazard along the run
};

// Backup policy for a state x: at the nearest state grid point holding at
// least one safe parameter (x's own cell when possible), the safe parameter
// with the best worst-case constraint lower bound. Smallest id on ties.
// Returns the pair id; throws SeedError when no safe pair exists.
long select_backup(const Eigen::VectorXd& x, const SafeState& st,
                   const ConfidenceTable& table, const GridDomain& domain);

// Fixed-step RK4 rollout with monitor-rate supervision. Parameters may lie
// off the parameter grid; `monitored` is false only for experiments the
// caller already knows to be safe. A monitored run switches to the backup
// policy, once, when the state exits the bounds, quantizes into the border,
// comes within eta of a border state, or trips the optional confidence
// trigger; integration then continues to the horizon.
class RolloutEngine {
 public:
  RolloutEngine(const SystemModel& sys, const GridDomain& domain,
                RolloutSettings settings);

  RolloutRecord run(const Eigen::VectorXd& a, const Eigen::VectorXd& x0,
                    bool monitored, const SafeState* st,
                    const ConfidenceTable* table) const;

  const RolloutSettings& settings() const { return settings_; }

 private:
  const SystemModel& sys_;
  const GridDomain& domain_;
  RolloutSettings settings_;
  long steps_per_sample_;
  long total_steps_;
};

}  // namespace gosafe
