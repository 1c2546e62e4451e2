// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#include "gosafe/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace gosafe {

namespace {
constexpr double kSqrt3 = 1.7320508075688772;
}

Kernel::Kernel(KernelFamily family, double variance, Eigen::VectorXd lengthscales)
    : family_(family), variance_(variance), lengthscales_(std::move(lengthscales)) {
  if (variance_ <= 0.0) throw std::invalid_argument("Kernel: variance must be positive");
  if (lengthscales_.size() == 0 || (lengthscales_.array() <= 0.0).any())
    throw std::invalid_argument("Kernel: lengthscales must be positive");
}

double Kernel::operator()(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
  if (a.size() != dims() || b.size() != dims())
    throw std::invalid_argument("Kernel: input dimension mismatch");
  const double r = ((a - b).array() / lengthscales_.array()).matrix().norm();
  switch (family_) {
    case KernelFamily::kMatern32:
      return variance_ * (1.0 + kSqrt3 * r) * std::exp(-kSqrt3 * r);
    case KernelFamily::kSquaredExponential:
      return variance_ * std::exp(-0.5 * r * r);
  }
  return 0.0;  // unreachable
}

Eigen::VectorXd Kernel::column(const Eigen::VectorXd& a, const Eigen::MatrixXd& pts) const {
  Eigen::VectorXd out(pts.rows());
  for (Eigen::Index i = 0; i < pts.rows(); ++i) out[i] = (*this)(a, pts.row(i).transpose());
  return out;
}

}  // namespace gosafe
