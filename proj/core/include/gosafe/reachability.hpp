// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <functional>
#include <utility>
#include <vector>

#include "gosafe/grid.hpp"
#include "gosafe/rollout.hpp"
#include "gosafe/system.hpp"

namespace gosafe {

// Exact quantities of a benchmark, for brute-force reference computations on
// small grids. All callables are deterministic.
struct GroundTruth {
  std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)> true_f;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)>
      true_g;
  // Noiseless monitor-rate state samples from x0 under fixed parameters.
  std::function<std::vector<Eigen::VectorXd>(const Eigen::VectorXd&,
                                             const Eigen::VectorXd&)>
      trajectory_fn;
};

// The system must outlive the returned callables.
GroundTruth make_ground_truth(const SystemModel& sys,
                              const RolloutSettings& settings);

// One step of Lipschitz reachability with slack epsilon: a pair joins when a
// single witness pair in S certifies every constraint,
// g_i(w) - epsilon - lipschitz_slack(w, t) >= 0. Exhaustive evaluation;
// grids are capped at 500 pairs.
std::vector<char> reach_conn(const std::vector<char>& safe,
                             const GroundTruth& truth,
                             const LipschitzConfig& cfg,
                             const GridDomain& domain);

// reach_conn plus the globally reachable pairs: (a, x0) whose state holds
// some safe parameter in S and whose true trajectory stays in bounds and
// never quantizes into the border of reach_conn(S).
std::vector<char> reach_global(const std::vector<char>& safe,
                               const GroundTruth& truth,
                               const LipschitzConfig& cfg,
                               const GridDomain& domain);

// Fixed point of reach_global.
std::vector<char> closure(const std::vector<char>& safe,
                          const GroundTruth& truth, const LipschitzConfig& cfg,
                          const GridDomain& domain);

// Exact best pair by true reward over `members` restricted to the nominal
// state. Throws SeedError when the slice is empty.
std::pair<long, double> oracle_optimum(const GroundTruth& truth,
                                       const GridDomain& domain,
                                       long nominal_state,
                                       const std::vector<char>& members);

}  // namespace gosafe
