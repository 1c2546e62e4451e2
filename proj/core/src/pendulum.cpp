// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#include "gosafe/pendulum.hpp"

#include <algorithm>
#include <cmath>

namespace gosafe {

namespace {
constexpr double kPi = 3.14159265358979323846;

double torque(const Eigen::VectorXd& x, const Eigen::VectorXd& a) {
  const double s1 =
      PendulumSystem::kStiffnessBase + PendulumSystem::kStiffnessGain * a[0];
  const double s2 = PendulumSystem::kDampingGain * a[1];
  return std::clamp(-(s1 * x[0] + s2 * x[1]), -PendulumSystem::kTorqueLimit,
                    PendulumSystem::kTorqueLimit);
}
}  // namespace

Eigen::VectorXd PendulumSystem::derivative(const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& a) const {
  Eigen::VectorXd dx(2);
  dx[0] = x[1];
  dx[1] = (kGravity / kLength) * std::sin(x[0]) +
          torque(x, a) / (kMass * kLength * kLength);
  return dx;
}

Eigen::VectorXd PendulumSystem::control(const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& a) const {
  Eigen::VectorXd u(1);
  u[0] = torque(x, a);
  return u;
}

Eigen::VectorXd PendulumSystem::sample_margins(const Eigen::VectorXd& x,
                                               const Eigen::VectorXd&) const {
  Eigen::VectorXd m(1);
  m[0] = kPi / 2.0 - std::abs(x[0]);
  return m;
}

Eigen::VectorXd PendulumSystem::clip_margins(const Eigen::VectorXd& m) const {
  return m.cwiseMax(kMarginClip);
}

double PendulumSystem::sample_reward(const Eigen::VectorXd& x,
                                     const Eigen::VectorXd&) const {
  const double alpha = kPi * std::clamp(x[1] / 4.0, -1.0, 1.0);
  return 1.0 - (0.8 * std::abs(x[0]) + 0.2 * std::abs(alpha)) / kPi;
}

double PendulumSystem::state_hazard(const Eigen::VectorXd& x) const {
  return kPi / 2.0 - std::abs(x[0]);
}

}  // namespace gosafe
