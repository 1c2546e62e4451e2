// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace gosafe {

// Monitor-rate samples of one experiment. times[0] == 0 holds the initial
// state. Margins and rewards are evaluated with whichever parameters were
// active at the sample (they change mid-run when a backup takes over);
// controls may be empty vectors for systems without an actuation channel.
struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<Eigen::VectorXd> controls;
  std::vector<Eigen::VectorXd> margins;
  std::vector<double> rewards;
};

struct Observation {
  double reward = 0.0;
  Eigen::VectorXd constraints;
};

// A deterministic continuous-time system under a parameterized policy.
class SystemModel {
 public:
  virtual ~SystemModel() = default;

  virtual std::string name() const = 0;
  virtual int state_dim() const = 0;
  virtual int param_dim() const = 0;
  virtual int control_dim() const = 0;
  virtual int constraint_count() const = 0;

  virtual Eigen::VectorXd derivative(const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& a) const = 0;
  virtual Eigen::VectorXd control(const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& a) const;

  // Instantaneous safety margins g(x, a). The observation for a finished
  // experiment is the minimum over monitor samples, passed through
  // clip_margins.
  virtual Eigen::VectorXd sample_margins(const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& a) const = 0;
  virtual Eigen::VectorXd clip_margins(const Eigen::VectorXd& m) const {
    return m;
  }

  virtual double sample_reward(const Eigen::VectorXd& x,
                               const Eigen::VectorXd& a) const = 0;

  // Unclipped hazard of a single state, negative when the state itself is a
  // safety violation. +inf for systems whose constraints are not a function
  // of the state alone.
  virtual double state_hazard(const Eigen::VectorXd& x) const;

  // Bound on |dx/dt| over the operating region, used for default trigger
  // radii.
  virtual double speed_bound() const = 0;

  virtual double default_horizon() const = 0;
  virtual double default_dt() const = 0;
  virtual double default_monitor_hz() const = 0;
};

// One classical fourth-order Runge-Kutta step of size dt.
Eigen::VectorXd rk4_step(const SystemModel& sys, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& a, double dt);

// Aggregates a finished trajectory: reward is the mean per-sample reward
// over samples after t=0, constraints the clipped minimum margins over all
// samples.
Observation observe(const SystemModel& sys, const Trajectory& traj);

// Minimum state hazard along the trajectory (+inf when the system defines
// none).
double trajectory_hazard(const SystemModel& sys, const Trajectory& traj);

}  // namespace gosafe
