// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#include "gosafe/beta.hpp"

#include <cmath>
#include <stdexcept>

namespace gosafe {

BetaSchedule BetaSchedule::constant(double beta) {
  if (beta <= 0.0) throw std::invalid_argument("BetaSchedule: beta must be positive");
  BetaSchedule s;
  s.constant_mode_ = true;
  s.beta_ = beta;
  return s;
}

BetaSchedule BetaSchedule::theoretical(double B, double sigma, double delta, GammaFn gamma,
                                       int num_indices) {
  if (B <= 0.0) throw std::invalid_argument("BetaSchedule: B must be positive");
  if (sigma < 0.0) throw std::invalid_argument("BetaSchedule: sigma must be >= 0");
  if (delta <= 0.0 || delta >= 1.0)
    throw std::invalid_argument("BetaSchedule: delta must be in (0, 1)");
  if (num_indices < 1) throw std::invalid_argument("BetaSchedule: num_indices must be >= 1");
  BetaSchedule s;
  s.constant_mode_ = false;
  s.B_ = B;
  s.sigma_ = sigma;
  s.log_inv_delta_ = std::log(1.0 / delta);
  s.num_indices_ = num_indices;
  s.gamma_ = std::move(gamma);
  return s;
}

double BetaSchedule::operator()(long n) const {
  if (n < 1) throw std::invalid_argument("BetaSchedule: n must be >= 1");
  if (constant_mode_) return beta_;
  const double g = gamma_ ? gamma_((n - 1) * num_indices_) : 0.0;
  const double root = B_ + 4.0 * sigma_ * std::sqrt(g + 1.0 + log_inv_delta_);
  return root * root;
}

}  // namespace gosafe
