// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#include "gosafe/poly1d.hpp"

namespace gosafe {

double Poly1dSystem::true_reward(double a) {
  return (((-2.26666667 * a - 0.26666667) * a + 1.76666667) * a + 0.26666667) *
             a +
         0.5;
}

double Poly1dSystem::true_margin(double a) {
  const double c =
      (((((((((19.3137 * a - 1.75115) * a - 34.2007) * a + 4.18593) * a +
            19.9015) *
               a -
           2.74682) *
              a -
          7.90079) *
             a +
         0.320741) *
            a +
        2.78633) *
           a -
       0.00869814) *
          a +
      0.3;
  return c - kThreshold;
}

Eigen::VectorXd Poly1dSystem::derivative(const Eigen::VectorXd&,
                                         const Eigen::VectorXd&) const {
  return Eigen::VectorXd::Zero(1);
}

Eigen::VectorXd Poly1dSystem::sample_margins(const Eigen::VectorXd&,
                                             const Eigen::VectorXd& a) const {
  Eigen::VectorXd m(1);
  m[0] = true_margin(a[0]);
  return m;
}

double Poly1dSystem::sample_reward(const Eigen::VectorXd&,
                                   const Eigen::VectorXd& a) const {
  return true_reward(a[0]);
}

}  // namespace gosafe
