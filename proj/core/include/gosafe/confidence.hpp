// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <vector>

namespace gosafe {

// Running-intersection confidence bounds l_n <= u_n per (grid pair, function
// index). Lower bounds only ever rise and upper bounds only ever fall, so
// interval widths are nonincreasing across a run.
class ConfidenceTable {
 public:
  ConfidenceTable(long num_pairs, int num_indices);

  long num_pairs() const { return lower_.rows(); }
  int num_indices() const { return static_cast<int>(lower_.cols()); }

  // Initial knowledge: seed pairs carry margin floor_value (L_x·mu) on
  // indices first_index and above. Everything else stays (-inf, +inf).
  void init_seed(const std::vector<long>& seed_pairs, double floor_value,
                 int first_index = 0);

  // Intersect column `index` with mean ± sqrt(beta)·sd. An empty
  // intersection collapses the row to its previous lower bound and bumps the
  // misspecification counter instead of failing.
  void update(int index, const Eigen::VectorXd& mean, const Eigen::VectorXd& sd,
              double beta);

  double lower(long pair, int index) const { return lower_(pair, index); }
  double upper(long pair, int index) const { return upper_(pair, index); }
  double width(long pair, int index) const {
    return upper_(pair, index) - lower_(pair, index);
  }

  const Eigen::MatrixXd& lower_matrix() const { return lower_; }
  const Eigen::MatrixXd& upper_matrix() const { return upper_; }

  long misspecification_count() const { return misspecifications_; }

 private:
  Eigen::MatrixXd lower_, upper_;
  long misspecifications_ = 0;
};

}  // namespace gosafe
