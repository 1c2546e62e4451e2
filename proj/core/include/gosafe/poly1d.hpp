// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "gosafe/system.hpp"

namespace gosafe {

// One-dimensional polynomial benchmark. The state is frozen (dz/dt = 0), so
// reward and margin depend on the policy parameter alone: reward f(a), one
// constraint c(a) - 0.6 with two disjoint bands where it is nonnegative. The
// global optimum sits in the band the seed does not start in.
class Poly1dSystem : public SystemModel {
 public:
  std::string name() const override { return "poly1d"; }
  int state_dim() const override { return 1; }
  int param_dim() const override { return 1; }
  int control_dim() const override { return 0; }
  int constraint_count() const override { return 1; }

  Eigen::VectorXd derivative(const Eigen::VectorXd& x,
                             const Eigen::VectorXd& a) const override;
  Eigen::VectorXd sample_margins(const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& a) const override;
  double sample_reward(const Eigen::VectorXd& x,
                       const Eigen::VectorXd& a) const override;

  double speed_bound() const override { return 0.0; }
  double default_horizon() const override { return 0.1; }
  double default_dt() const override { return 0.05; }
  double default_monitor_hz() const override { return 20.0; }

  static double true_reward(double a);
  static double true_margin(double a);  // c(a) - threshold

  static constexpr double kThreshold = 0.6;
};

}  // namespace gosafe
