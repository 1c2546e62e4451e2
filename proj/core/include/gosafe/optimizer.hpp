// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <functional>
#include <random>
#include <vector>

#include "gosafe/beta.hpp"
#include "gosafe/confidence.hpp"
#include "gosafe/gp.hpp"
#include "gosafe/grid.hpp"
#include "gosafe/rollout.hpp"
#include "gosafe/safe_sets.hpp"
#include "gosafe/system.hpp"

namespace gosafe {

enum class Mode { kGoSafe, kSafeOpt };

enum class Stage { kDone = 0, kS1 = 1, kS2 = 2, kS3 = 3 };

struct StageConditionReport {
  double s1_width = 0.0;  // max width over (G u M) at the nominal state
  double s2_width = 0.0;  // max constraint width over G
  double s3_width = 0.0;  // practical mode: max width over the global slice
  long s3_candidates = 0;
  Stage chosen = Stage::kDone;
};

struct RunRecord {
  long iteration = 0;
  Stage stage = Stage::kDone;
  long evaluated_pair = -1;
  Eigen::VectorXd evaluated_params;
  Eigen::VectorXd evaluated_state;
  bool safe_outcome = true;
  double reward_observed = 0.0;
  Eigen::VectorXd constraint_observed;
  long safe_set_size = 0;
  double best_guess_lower = 0.0;
  double hazard = 0.0;
  double s1_width = 0.0;
  double s2_width = 0.0;
};

struct OptimizerSettings {
  Mode mode = Mode::kGoSafe;
  bool practical_s3 = true;  // stage three searches the nominal slice
  long s1_budget = 0;        // per-stage evaluation caps, 0 = uncapped
  long s2_budget = 0;
  long s3_budget = 0;
  long max_iterations = 1000;
  bool record_failures_in_gp = true;
  double noise_std = 0.0;
  unsigned long long rng_seed = 0;
  long nominal_state = 0;          // flat state id
  std::vector<long> seed_pairs;    // initial safe pairs, evaluated up front
  // Called after every experiment, seed evaluations included (those carry
  // iteration 0). Used for trajectory export and live reporting.
  std::function<void(const RunRecord&, const RolloutRecord&)> on_evaluation;
};

// The three-stage safe optimization loop. Stage one is parameter-space
// optimization at the nominal initial condition, stage two expands the safe
// set jointly over parameters and initial conditions, stage three probes
// outside the safe set under backup protection. Interrupted experiments are
// remembered and retried once the border has moved past their failure state.
class GoSafeOptimizer {
 public:
  GoSafeOptimizer(const SystemModel& sys, const GridDomain& domain,
                  const LipschitzConfig& lip, SurrogateModel models,
                  BetaSchedule beta, RolloutSettings rollout,
                  OptimizerSettings settings);

  struct StepResult {
    StageConditionReport report;
    bool done = false;
    RunRecord record;  // meaningful only when !done
  };

  // One iteration: refresh confidence bounds and sets, dispatch a stage,
  // evaluate, record. Returns done when no stage condition holds.
  StepResult step();

  bool done() const { return done_; }
  long iteration() const { return iteration_; }

  const SafeState& safe_state() const { return state_; }
  const ConfidenceTable& table() const { return table_; }
  const SurrogateModel& models() const { return models_; }
  const std::vector<RunRecord>& history() const { return history_; }
  const OptimizerSettings& settings() const { return settings_; }
  long misspecification_count() const {
    return table_.misspecification_count();
  }

  // Recommended policy so far: best reward lower bound among safe pairs at
  // the nominal state.
  long best_guess_pair() const;

  // Exposed for tests and diagnostics.
  StageConditionReport evaluate_stage_conditions();
  long acquire_s1() const;
  long acquire_s2() const;
  long acquire_s3() const;
  long acquire_global_max() const;

 private:
  void refresh_confidence_();
  void refresh_sets_();
  void evaluate_pair_(long pair, Stage stage, RunRecord* rec);
  void revisit_failed_();
  double width_all_indices_(long pair) const;

  const SystemModel& sys_;
  const GridDomain& domain_;
  LipschitzConfig lip_;
  SurrogateModel models_;
  BetaSchedule beta_;
  RolloutEngine rollout_;
  OptimizerSettings settings_;

  ConfidenceTable table_;
  SafeState state_;
  Grid::Stencil stencil_;
  std::vector<char> expanders_;
  std::vector<char> maximizers_;
  std::mt19937_64 rng_;

  long iteration_ = 0;
  long s1_count_ = 0, s2_count_ = 0, s3_count_ = 0;
  bool done_ = false;
  std::vector<RunRecord> history_;
};

}  // namespace gosafe
