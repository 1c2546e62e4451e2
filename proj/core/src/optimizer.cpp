// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#include "gosafe/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gosafe/errors.hpp"

namespace gosafe {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXd all_pair_points(const GridDomain& domain) {
  const long pairs = domain.num_pairs();
  Eigen::MatrixXd pts(pairs,
                      domain.params().dims() + domain.states().dims());
  for (long p = 0; p < pairs; ++p)
    pts.row(p) = domain.pair_point_normalized(p).transpose();
  return pts;
}
}  // namespace

GoSafeOptimizer::GoSafeOptimizer(const SystemModel& sys,
                                 const GridDomain& domain,
                                 const LipschitzConfig& lip,
                                 SurrogateModel models, BetaSchedule beta,
                                 RolloutSettings rollout,
                                 OptimizerSettings settings)
    : sys_(sys),
      domain_(domain),
      lip_(lip),
      models_(std::move(models)),
      beta_(std::move(beta)),
      rollout_(sys, domain, rollout),
      settings_(std::move(settings)),
      table_(domain.num_pairs(), models_.num_indices()),
      state_(domain),
      stencil_(domain.states().stencil(2.0 * domain.mu())),
      expanders_(domain.num_pairs(), 0),
      maximizers_(domain.num_pairs(), 0),
      rng_(settings_.rng_seed) {
  if (settings_.seed_pairs.empty())
    throw SeedError("initial safe set is empty");
  bool nominal_covered = false;
  for (long p : settings_.seed_pairs) {
    if (p < 0 || p >= domain_.num_pairs())
      throw SeedError("seed pair id out of range");
    if (domain_.state_of(p) == settings_.nominal_state) nominal_covered = true;
  }
  if (!nominal_covered)
    throw SeedError("no seed pair at the nominal initial condition");
  if (settings_.nominal_state < 0 ||
      settings_.nominal_state >= domain_.num_states())
    throw SeedError("nominal state id out of range");

  models_.set_query_points(all_pair_points(domain_));
  table_.init_seed(settings_.seed_pairs, lip_.L_x * domain_.mu(), 1);
  for (long p : settings_.seed_pairs) state_.mark_safe(p, domain_);
  recompute_border(state_, domain_, stencil_);

  // Ground the surrogates with one unmonitored experiment per seed pair.
  std::vector<long> seeds = settings_.seed_pairs;
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  for (long p : seeds) {
    RunRecord ignored;
    evaluate_pair_(p, Stage::kDone, &ignored);
  }
}

double GoSafeOptimizer::width_all_indices_(long pair) const {
  double w = -kInf;
  for (int i = 0; i < table_.num_indices(); ++i)
    w = std::max(w, table_.width(pair, i));
  return w;
}

void GoSafeOptimizer::refresh_confidence_() {
  const double beta = beta_(std::max<long>(iteration_, 1));
  for (int i = 0; i < models_.num_indices(); ++i) {
    const GpModel& m = models_.model(i);
    table_.update(i, m.query_mean(), m.query_sd(), beta);
  }
}

void GoSafeOptimizer::refresh_sets_() {
  recompute_border(state_, domain_, stencil_);
  expanders_ = compute_expanders(state_, table_, lip_, domain_);
  maximizers_ =
      compute_maximizers(state_, table_, settings_.nominal_state, domain_);
}

StageConditionReport GoSafeOptimizer::evaluate_stage_conditions() {
  StageConditionReport r;
  const long nx = domain_.num_states();

  r.s1_width = 0.0;
  for (long a = 0; a < domain_.num_params(); ++a) {
    const long pair = a * nx + settings_.nominal_state;
    if (!expanders_[pair] && !maximizers_[pair]) continue;
    r.s1_width = std::max(r.s1_width, width_all_indices_(pair));
  }

  r.s2_width = 0.0;
  for (long pair = 0; pair < domain_.num_pairs(); ++pair) {
    if (!expanders_[pair]) continue;
    for (int i = 1; i < table_.num_indices(); ++i)
      r.s2_width = std::max(r.s2_width, table_.width(pair, i));
  }

  r.s3_width = 0.0;
  r.s3_candidates = 0;
  if (settings_.practical_s3) {
    for (long a = 0; a < domain_.num_params(); ++a) {
      const long pair = a * nx + settings_.nominal_state;
      if (state_.failed[pair]) continue;
      ++r.s3_candidates;
      r.s3_width = std::max(r.s3_width, width_all_indices_(pair));
    }
  } else {
    for (long pair = 0; pair < domain_.num_pairs(); ++pair) {
      if (state_.safe[pair] || state_.failed[pair]) continue;
      if (!state_.state_has_safe_param(domain_.state_of(pair))) continue;
      ++r.s3_candidates;
    }
  }

  const auto within = [](long count, long budget) {
    return budget == 0 || count < budget;
  };
  const bool s1 =
      r.s1_width > lip_.epsilon && within(s1_count_, settings_.s1_budget);
  if (settings_.mode == Mode::kSafeOpt) {
    r.chosen = s1 ? Stage::kS1 : Stage::kDone;
    return r;
  }
  const bool s2 =
      r.s2_width > lip_.epsilon && within(s2_count_, settings_.s2_budget);
  bool s3 = within(s3_count_, settings_.s3_budget) && r.s3_candidates > 0;
  if (settings_.practical_s3) s3 = s3 && r.s3_width > lip_.epsilon;
  r.chosen = s1 ? Stage::kS1 : s2 ? Stage::kS2 : s3 ? Stage::kS3 : Stage::kDone;
  return r;
}

long GoSafeOptimizer::acquire_s1() const {
  const long nx = domain_.num_states();
  long best = -1;
  double best_w = -kInf;
  for (long a = 0; a < domain_.num_params(); ++a) {
    const long pair = a * nx + settings_.nominal_state;
    if (!expanders_[pair] && !maximizers_[pair]) continue;
    const double w = width_all_indices_(pair);
    if (best < 0 || w > best_w) {
      best = pair;
      best_w = w;
    }
  }
  return best;
}

long GoSafeOptimizer::acquire_s2() const {
  long best = -1;
  double best_w = -kInf;
  for (long pair = 0; pair < domain_.num_pairs(); ++pair) {
    if (!expanders_[pair]) continue;
    double w = -kInf;
    for (int i = 1; i < table_.num_indices(); ++i)
      w = std::max(w, table_.width(pair, i));
    if (best < 0 || w > best_w) {
      best = pair;
      best_w = w;
    }
  }
  return best;
}

long GoSafeOptimizer::acquire_s3() const {
  long best = -1;
  double best_w = -kInf;
  for (long pair = 0; pair < domain_.num_pairs(); ++pair) {
    if (state_.safe[pair] || state_.failed[pair]) continue;
    if (!state_.state_has_safe_param(domain_.state_of(pair))) continue;
    const double w = width_all_indices_(pair);
    if (best < 0 || w > best_w) {
      best = pair;
      best_w = w;
    }
  }
  return best;
}

long GoSafeOptimizer::acquire_global_max() const {
  const long nx = domain_.num_states();
  long best = -1;
  double best_w = -kInf;
  for (long a = 0; a < domain_.num_params(); ++a) {
    const long pair = a * nx + settings_.nominal_state;
    if (state_.failed[pair]) continue;
    const double w = width_all_indices_(pair);
    if (best < 0 || w > best_w) {
      best = pair;
      best_w = w;
    }
  }
  return best;
}

void GoSafeOptimizer::evaluate_pair_(long pair, Stage stage, RunRecord* rec) {
  const Eigen::VectorXd a = domain_.params().point(domain_.param_of(pair));
  const Eigen::VectorXd x0 = domain_.states().point(domain_.state_of(pair));
  const bool monitored = !state_.safe[pair];
  const RolloutRecord rr = rollout_.run(a, x0, monitored, &state_, &table_);

  rec->evaluated_pair = pair;
  rec->evaluated_params = a;
  rec->evaluated_state = x0;
  rec->safe_outcome = !rr.interrupted;
  rec->hazard = rr.hazard;

  const int q = models_.num_indices() - 1;
  rec->constraint_observed = Eigen::VectorXd::Zero(q);
  const Eigen::VectorXd z = domain_.pair_point_normalized(pair);

  auto noise = [&]() -> double {
    if (settings_.noise_std <= 0.0) return 0.0;
    std::normal_distribution<double> d(0.0, settings_.noise_std);
    return d(rng_);
  };

  if (!rr.interrupted) {
    const double yf = rr.observation.reward + noise();
    models_.add_observation(0, z, yf, -1);
    rec->reward_observed = yf;
    for (int i = 0; i < q; ++i) {
      const double yg = rr.observation.constraints[i] + noise();
      models_.add_observation(i + 1, z, yg, -1);
      rec->constraint_observed[i] = yg;
    }
    if (stage == Stage::kS3) state_.mark_safe(pair, domain_);
  } else {
    // The experiment was taken over by the backup: feed neutral values so
    // the surrogates deflate this pair, tagged for removal on revisit.
    rec->reward_observed = 0.0;
    if (settings_.record_failures_in_gp) {
      models_.add_observation(0, z, 0.0, pair);
      for (int i = 0; i < q; ++i) models_.add_observation(i + 1, z, 0.0, pair);
    }
    state_.mark_failed(pair, rr.x_fail);
  }

  if (settings_.on_evaluation) settings_.on_evaluation(*rec, rr);
}

void GoSafeOptimizer::revisit_failed_() {
  std::vector<long> clear;
  for (const auto& [pair, xf] : state_.fail_states) {
    const long sid = domain_.states().nearest(xf);
    if (!state_.border_state[sid]) clear.push_back(pair);
  }
  for (long pair : clear) {
    state_.clear_failed(pair);
    models_.remove_tagged(pair);
  }
}

GoSafeOptimizer::StepResult GoSafeOptimizer::step() {
  StepResult out;
  if (done_) {
    out.done = true;
    return out;
  }
  ++iteration_;
  refresh_confidence_();
  expand_safe_set(state_, table_, lip_, domain_);
  refresh_sets_();
  // Failures whose state just left the border become retryable before the
  // stage decision; otherwise the loop can exhaust with a stale failure.
  revisit_failed_();
  out.report = evaluate_stage_conditions();
  if (out.report.chosen == Stage::kDone) {
    done_ = true;
    out.done = true;
    return out;
  }

  long pair = -1;
  switch (out.report.chosen) {
    case Stage::kS1:
      pair = acquire_s1();
      ++s1_count_;
      break;
    case Stage::kS2:
      pair = acquire_s2();
      ++s2_count_;
      break;
    default:
      pair = settings_.practical_s3 ? acquire_global_max() : acquire_s3();
      ++s3_count_;
      break;
  }

  if (pair < 0)
    throw std::logic_error("stage condition held but acquisition was empty");

  RunRecord& rec = out.record;
  rec.iteration = iteration_;
  rec.stage = out.report.chosen;
  rec.s1_width = out.report.s1_width;
  rec.s2_width = out.report.s2_width;
  evaluate_pair_(pair, out.report.chosen, &rec);

  recompute_border(state_, domain_, stencil_);
  revisit_failed_();

  rec.safe_set_size = state_.num_safe();
  rec.best_guess_lower = table_.lower(best_guess_pair(), 0);
  history_.push_back(rec);

  if (iteration_ >= settings_.max_iterations) done_ = true;
  return out;
}

long GoSafeOptimizer::best_guess_pair() const {
  return best_guess(state_, table_, settings_.nominal_state, domain_);
}

}  // namespace gosafe
