// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#include "gosafe/system.hpp"

#include <limits>
#include <stdexcept>

namespace gosafe {

Eigen::VectorXd SystemModel::control(const Eigen::VectorXd&,
                                     const Eigen::VectorXd&) const {
  return Eigen::VectorXd();
}

double SystemModel::state_hazard(const Eigen::VectorXd&) const {
  return std::numeric_limits<double>::infinity();
}

Eigen::VectorXd rk4_step(const SystemModel& sys, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& a, double dt) {
  const Eigen::VectorXd k1 = sys.derivative(x, a);
  const Eigen::VectorXd k2 = sys.derivative(x + 0.5 * dt * k1, a);
  const Eigen::VectorXd k3 = sys.derivative(x + 0.5 * dt * k2, a);
  const Eigen::VectorXd k4 = sys.derivative(x + dt * k3, a);
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Observation observe(const SystemModel& sys, const Trajectory& traj) {
  if (traj.times.size() < 2)
    throw std::invalid_argument("trajectory has no samples past t=0");
  Observation out;
  double sum = 0.0;
  for (std::size_t s = 1; s < traj.rewards.size(); ++s) sum += traj.rewards[s];
  out.reward = sum / static_cast<double>(traj.rewards.size() - 1);
  Eigen::VectorXd m = traj.margins.front();
  for (std::size_t s = 1; s < traj.margins.size(); ++s)
    m = m.cwiseMin(traj.margins[s]);
  out.constraints = sys.clip_margins(m);
  return out;
}

double trajectory_hazard(const SystemModel& sys, const Trajectory& traj) {
  double h = std::numeric_limits<double>::infinity();
  for (const auto& x : traj.states) h = std::min(h, sys.state_hazard(x));
  return h;
}

}  // namespace gosafe
