// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#include "gosafe/reachability.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gosafe/errors.hpp"
#include "gosafe/safe_sets.hpp"

namespace gosafe {

namespace {

void check_size(const std::vector<char>& safe, const GridDomain& domain) {
  if (domain.num_pairs() > 500)
    throw std::invalid_argument("reachability oracle is capped at 500 pairs");
  if (static_cast<long>(safe.size()) != domain.num_pairs())
    throw std::invalid_argument("bit-set does not match the grid");
}

std::vector<char> border_of(const std::vector<char>& safe,
                            const GridDomain& domain) {
  SafeState st(domain);
  for (long p = 0; p < domain.num_pairs(); ++p)
    if (safe[p]) st.mark_safe(p, domain);
  recompute_border(st, domain, domain.states().stencil(2.0 * domain.mu()));
  return st.border_state;
}

}  // namespace

GroundTruth make_ground_truth(const SystemModel& sys,
                              const RolloutSettings& settings) {
  const double horizon = settings.horizon;
  const double dt = settings.dt;
  const double period = settings.monitor_period;
  const long steps_per_sample = std::lround(period / dt);
  const long total_steps = std::lround(horizon / dt);
  if (steps_per_sample < 1 || total_steps < steps_per_sample)
    throw std::invalid_argument("monitor period incompatible with dt/horizon");

  auto rollout = [&sys, dt, steps_per_sample,
                  total_steps](const Eigen::VectorXd& a,
                               const Eigen::VectorXd& x0) {
    Trajectory traj;
    Eigen::VectorXd x = x0;
    auto sample = [&](double t) {
      traj.times.push_back(t);
      traj.states.push_back(x);
      traj.controls.push_back(sys.control(x, a));
      traj.margins.push_back(sys.sample_margins(x, a));
      traj.rewards.push_back(sys.sample_reward(x, a));
    };
    sample(0.0);
    for (long step = 1; step <= total_steps; ++step) {
      x = rk4_step(sys, x, a, dt);
      if (step % steps_per_sample == 0)
        sample(dt * static_cast<double>(step));
    }
    return traj;
  };

  GroundTruth truth;
  truth.true_f = [&sys, rollout](const Eigen::VectorXd& a,
                                 const Eigen::VectorXd& x0) {
    return observe(sys, rollout(a, x0)).reward;
  };
  truth.true_g = [&sys, rollout](const Eigen::VectorXd& a,
                                 const Eigen::VectorXd& x0) {
    return observe(sys, rollout(a, x0)).constraints;
  };
  truth.trajectory_fn = [rollout](const Eigen::VectorXd& a,
                                  const Eigen::VectorXd& x0) {
    return rollout(a, x0).states;
  };
  return truth;
}

std::vector<char> reach_conn(const std::vector<char>& safe,
                             const GroundTruth& truth,
                             const LipschitzConfig& cfg,
                             const GridDomain& domain) {
  check_size(safe, domain);
  const long pairs = domain.num_pairs();

  std::vector<long> witnesses;
  std::vector<Eigen::VectorXd> gw;
  for (long w = 0; w < pairs; ++w) {
    if (!safe[w]) continue;
    witnesses.push_back(w);
    gw.push_back(truth.true_g(domain.params().point(domain.param_of(w)),
                              domain.states().point(domain.state_of(w))));
  }

  std::vector<char> out = safe;
  for (long t = 0; t < pairs; ++t) {
    if (out[t]) continue;
    for (std::size_t k = 0; k < witnesses.size(); ++k) {
      const double slack = domain.lipschitz_slack(cfg, witnesses[k], t);
      bool all = true;
      for (long i = 0; i < gw[k].size(); ++i) {
        if (!(gw[k][i] - cfg.epsilon - slack >= 0.0)) {
          all = false;
          break;
        }
      }
      if (all) {
        out[t] = 1;
        break;
      }
    }
  }
  return out;
}

std::vector<char> reach_global(const std::vector<char>& safe,
                               const GroundTruth& truth,
                               const LipschitzConfig& cfg,
                               const GridDomain& domain) {
  check_size(safe, domain);
  const std::vector<char> conn = reach_conn(safe, truth, cfg, domain);
  const std::vector<char> border = border_of(conn, domain);

  std::vector<char> partnered(domain.num_states(), 0);
  for (long p = 0; p < domain.num_pairs(); ++p)
    if (safe[p]) partnered[domain.state_of(p)] = 1;

  std::vector<char> out = conn;
  for (long t = 0; t < domain.num_pairs(); ++t) {
    if (out[t]) continue;
    const long x0_id = domain.state_of(t);
    if (!partnered[x0_id]) continue;
    const auto states = truth.trajectory_fn(
        domain.params().point(domain.param_of(t)),
        domain.states().point(x0_id));
    bool clean = true;
    for (const auto& x : states) {
      if (!domain.in_bounds(x) || border[domain.states().nearest(x)]) {
        clean = false;
        break;
      }
    }
    if (clean) out[t] = 1;
  }
  return out;
}

std::vector<char> closure(const std::vector<char>& safe,
                          const GroundTruth& truth, const LipschitzConfig& cfg,
                          const GridDomain& domain) {
  std::vector<char> cur = safe;
  for (;;) {
    std::vector<char> next = reach_global(cur, truth, cfg, domain);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

std::pair<long, double> oracle_optimum(const GroundTruth& truth,
                                       const GridDomain& domain,
                                       long nominal_state,
                                       const std::vector<char>& members) {
  check_size(members, domain);
  long best = -1;
  double best_f = -std::numeric_limits<double>::infinity();
  for (long a = 0; a < domain.num_params(); ++a) {
    const long pair = domain.pair_id(a, nominal_state);
    if (!members[pair]) continue;
    const double f = truth.true_f(domain.params().point(a),
                                  domain.states().point(nominal_state));
    if (best < 0 || f > best_f) {
      best = pair;
      best_f = f;
    }
  }
  if (best < 0) throw SeedError("no member at the nominal initial condition");
  return {best, best_f};
}

}  // namespace gosafe
