// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

namespace gosafe {

// Confidence-scaling schedule. beta(n) returns the squared scale beta_n; the
// interval half-width is sqrt(beta_n)·sd.
//
// The theoretical schedule is
//   sqrt(beta_n) = B + 4·sigma·sqrt(gamma((n-1)·num_indices) + 1 + ln(1/delta))
// with B an RKHS-norm bound, sigma the observation noise scale, and gamma the
// information-capacity sequence.
class BetaSchedule {
 public:
  using GammaFn = std::function<double(long)>;

  static BetaSchedule constant(double beta);
  static BetaSchedule theoretical(double B, double sigma, double delta, GammaFn gamma,
                                  int num_indices);

  // n is the 1-based iteration index.
  double operator()(long n) const;

 private:
  BetaSchedule() = default;
  bool constant_mode_ = true;
  double beta_ = 3.0;
  double B_ = 0.0, sigma_ = 0.0, log_inv_delta_ = 0.0;
  int num_indices_ = 1;
  GammaFn gamma_;
};

}  // namespace gosafe
