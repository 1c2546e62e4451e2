// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

namespace gosafe {

enum class KernelFamily { kMatern32, kSquaredExponential };

// Stationary covariance with per-dimension lengthscales. Inputs are expected
// in normalized grid units (see Grid::normalize); lengthscales share those
// units.
class Kernel {
 public:
  Kernel(KernelFamily family, double variance, Eigen::VectorXd lengthscales);

  KernelFamily family() const { return family_; }
  double variance() const { return variance_; }
  const Eigen::VectorXd& lengthscales() const { return lengthscales_; }
  int dims() const { return static_cast<int>(lengthscales_.size()); }

  double operator()(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;

  // Covariances between one point and each row of a point matrix.
  Eigen::VectorXd column(const Eigen::VectorXd& a, const Eigen::MatrixXd& pts) const;

 private:
  KernelFamily family_;
  double variance_;
  Eigen::VectorXd lengthscales_;
};

}  // namespace gosafe
