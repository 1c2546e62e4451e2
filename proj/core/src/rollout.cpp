// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#include "gosafe/rollout.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gosafe/errors.hpp"

namespace gosafe {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

long select_backup(const Eigen::VectorXd& x, const SafeState& st,
                   const ConfidenceTable& table, const GridDomain& domain) {
  const Grid& states = domain.states();
  const long own = states.nearest(x);

  long state = -1;
  if (st.state_has_safe_param(own)) {
    state = own;
  } else {
    double best_d = kInf;
    for (long s = 0; s < domain.num_states(); ++s) {
      if (!st.state_has_safe_param(s)) continue;
      const double d = (states.point(s) - x).norm();
      if (d < best_d) {
        best_d = d;
        state = s;
      }
    }
    if (state < 0) throw SeedError("no safe pair available for backup");
  }

  long best_pair = -1;
  double best_l = -kInf;
  for (long a = 0; a < domain.num_params(); ++a) {
    const long pair = domain.pair_id(a, state);
    if (!st.safe[pair]) continue;
    double worst = kInf;
    for (int i = 1; i < table.num_indices(); ++i)
      worst = std::min(worst, table.lower(pair, i));
    if (best_pair < 0 || worst > best_l) {
      best_pair = pair;
      best_l = worst;
    }
  }
  return best_pair;
}

RolloutEngine::RolloutEngine(const SystemModel& sys, const GridDomain& domain,
                             RolloutSettings settings)
    : sys_(sys), domain_(domain), settings_(settings) {
  if (settings_.dt <= 0.0 || settings_.horizon <= 0.0 ||
      settings_.monitor_period <= 0.0)
    throw std::invalid_argument("rollout times must be positive");
  steps_per_sample_ = std::lround(settings_.monitor_period / settings_.dt);
  total_steps_ = std::lround(settings_.horizon / settings_.dt);
  if (steps_per_sample_ < 1 || total_steps_ < steps_per_sample_)
    throw std::invalid_argument("monitor period incompatible with dt/horizon");
}

RolloutRecord RolloutEngine::run(const Eigen::VectorXd& a,
                                 const Eigen::VectorXd& x0, bool monitored,
                                 const SafeState* st,
                                 const ConfidenceTable* table) const {
  if (monitored && (st == nullptr || table == nullptr))
    throw std::invalid_argument("monitored rollout needs set state");

  RolloutRecord rec;
  Eigen::VectorXd x = x0;
  Eigen::VectorXd active = a;

  std::vector<long> border_ids;
  if (monitored) {
    for (long s = 0; s < domain_.num_states(); ++s)
      if (st->border_state[s]) border_ids.push_back(s);
  }

  const long nearest_param = monitored ? domain_.params().nearest(a) : -1;

  auto sample = [&](double t) {
    rec.trajectory.times.push_back(t);
    rec.trajectory.states.push_back(x);
    rec.trajectory.controls.push_back(sys_.control(x, active));
    rec.trajectory.margins.push_back(sys_.sample_margins(x, active));
    rec.trajectory.rewards.push_back(sys_.sample_reward(x, active));
  };

  auto triggered = [&]() -> bool {
    if (!domain_.in_bounds(x)) return true;
    const long sid = domain_.states().nearest(x);
    if (st->border_state[sid]) return true;
    for (long b : border_ids)
      if ((domain_.states().point(b) - x).norm() < settings_.eta) return true;
    if (settings_.use_confidence_trigger) {
      const long pair = domain_.pair_id(nearest_param, sid);
      for (int i = 1; i < table->num_indices(); ++i)
        if (table->lower(pair, i) < settings_.confidence_threshold) return true;
    }
    return false;
  };

  auto engage_backup = [&](double t) {
    rec.interrupted = true;
    rec.switch_time = t;
    rec.x_fail = x;
    rec.backup_pair = select_backup(x, *st, *table, domain_);
    rec.backup_params = domain_.params().point(domain_.param_of(rec.backup_pair));
    active = rec.backup_params;
  };

  sample(0.0);
  if (monitored && triggered()) engage_backup(0.0);

  for (long step = 1; step <= total_steps_; ++step) {
    x = rk4_step(sys_, x, active, settings_.dt);
    if (step % steps_per_sample_ != 0) continue;
    const double t = settings_.dt * static_cast<double>(step);
    if (!x.allFinite()) throw NumericsError("state diverged during rollout");
    sample(t);
    if (monitored && !rec.interrupted && triggered()) engage_backup(t);
  }

  rec.observation = observe(sys_, rec.trajectory);
  rec.hazard = trajectory_hazard(sys_, rec.trajectory);
  return rec;
}

}  // namespace gosafe
