// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "gosafe/system.hpp"

namespace gosafe {

// Inverted pendulum stabilized by a saturated linear state-feedback law.
// Gains k in [0,1]^2 map to stiffness 10 + 15*k1 and damping 6*k2, torque
// clipped at +/-15. The single constraint keeps |theta| below pi/2; the
// observed margin is the trajectory minimum of pi/2 - |theta|, clipped at
// -0.5 so one deep excursion does not dominate the surrogate.
class PendulumSystem : public SystemModel {
 public:
  std::string name() const override { return "pendulum"; }
  int state_dim() const override { return 2; }
  int param_dim() const override { return 2; }
  int control_dim() const override { return 1; }
  int constraint_count() const override { return 1; }

  Eigen::VectorXd derivative(const Eigen::VectorXd& x,
                             const Eigen::VectorXd& a) const override;
  Eigen::VectorXd control(const Eigen::VectorXd& x,
                          const Eigen::VectorXd& a) const override;
  Eigen::VectorXd sample_margins(const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& a) const override;
  Eigen::VectorXd clip_margins(const Eigen::VectorXd& m) const override;
  double sample_reward(const Eigen::VectorXd& x,
                       const Eigen::VectorXd& a) const override;
  double state_hazard(const Eigen::VectorXd& x) const override;

  double speed_bound() const override { return 25.0; }
  double default_horizon() const override { return 10.0; }
  double default_dt() const override { return 1e-3; }
  double default_monitor_hz() const override { return 50.0; }

  static constexpr double kGravity = 9.81;
  static constexpr double kLength = 1.0;
  static constexpr double kMass = 1.0;
  static constexpr double kStiffnessBase = 10.0;
  static constexpr double kStiffnessGain = 15.0;
  static constexpr double kDampingGain = 6.0;
  static constexpr double kTorqueLimit = 15.0;
  static constexpr double kMarginClip = -0.5;
};

}  // namespace gosafe
