// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#include "gosafe/confidence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gosafe {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ConfidenceTable::ConfidenceTable(long num_pairs, int num_indices)
    : lower_(Eigen::MatrixXd::Constant(num_pairs, num_indices, -kInf)),
      upper_(Eigen::MatrixXd::Constant(num_pairs, num_indices, kInf)) {
  if (num_pairs <= 0 || num_indices <= 0)
    throw std::invalid_argument("confidence table must be non-empty");
}

void ConfidenceTable::init_seed(const std::vector<long>& seed_pairs,
                                double floor_value, int first_index) {
  if (first_index < 0 || first_index >= num_indices())
    throw std::out_of_range("confidence index out of range");
  for (long p : seed_pairs) {
    if (p < 0 || p >= num_pairs())
      throw std::out_of_range("seed pair out of range");
    for (int i = first_index; i < num_indices(); ++i)
      lower_(p, i) = floor_value;
  }
}

void ConfidenceTable::update(int index, const Eigen::VectorXd& mean,
                             const Eigen::VectorXd& sd, double beta) {
  if (index < 0 || index >= num_indices())
    throw std::out_of_range("confidence index out of range");
  if (mean.size() != num_pairs() || sd.size() != num_pairs())
    throw std::invalid_argument("confidence update size mismatch");
  const double root_beta = std::sqrt(beta);
  for (long p = 0; p < num_pairs(); ++p) {
    const double radius = root_beta * sd[p];
    const double nl = std::max(lower_(p, index), mean[p] - radius);
    const double nu = std::min(upper_(p, index), mean[p] + radius);
    if (nl > nu) {
      // Model and observations disagree; keep the tightest lower bound seen
      // so far as a degenerate interval rather than aborting the run.
      upper_(p, index) = lower_(p, index);
      ++misspecifications_;
    } else {
      lower_(p, index) = nl;
      upper_(p, index) = nu;
    }
  }
}

}  // namespace gosafe
