// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "gosafe/kernel.hpp"

namespace gosafe {

// Exact GP regression with y ~ N(f, noise_std^2).
//
// The model optionally carries a fixed query-point set (the search grid);
// posterior mean/sd over it are maintained incrementally per observation by
// extending the Cholesky factor and the back-solved cross-covariance block,
// so an update costs O(n·P) instead of a refit. Row removal and jitter
// escalation fall back to a full refit.
class GpModel {
 public:
  GpModel(Kernel kernel, double noise_std);

  const Kernel& kernel() const { return kernel_; }
  double noise_std() const { return noise_std_; }
  int count() const { return static_cast<int>(x_.size()); }
  double jitter() const { return jitter_; }

  // Rows are points in kernel (normalized) coordinates.
  void set_query_points(Eigen::MatrixXd pts);
  long num_query_points() const { return query_.rows(); }

  // tag < 0 means untagged. Tagged rows can be removed later as a group.
  void add(const Eigen::VectorXd& z, double y, long tag = -1);
  bool remove_tagged(long tag);

  // Posterior over the attached query set.
  Eigen::VectorXd query_mean() const;
  Eigen::VectorXd query_sd() const;

  // Posterior at an arbitrary point: (mean, variance). O(n^2).
  std::pair<double, double> posterior(const Eigen::VectorXd& z) const;

 private:
  void ensure_capacity_(int rows, int valid);
  void refit_();
  void recompute_query_cache_();

  Kernel kernel_;
  double noise_std_;
  double jitter_ = 0.0;

  std::vector<Eigen::VectorXd> x_;
  std::vector<double> y_;
  std::vector<long> tags_;

  // Lower-triangular factor of K + (noise^2 + jitter)·I in the top-left
  // count() x count() block; over-allocated by doubling.
  Eigen::MatrixXd chol_;
  Eigen::VectorXd alpha_;  // L^{-1} y

  Eigen::MatrixXd query_;      // P x d
  Eigen::MatrixXd cross_;      // L^{-1} K(X, query), rows grown with chol_
  Eigen::VectorXd mean_q_;     // cross^T alpha
  Eigen::VectorXd var_q_raw_;  // prior variance - column squared norms (unclamped)
};

// One GP per function index: 0 is the reward f, 1..q are the constraints.
class SurrogateModel {
 public:
  explicit SurrogateModel(std::vector<GpModel> models);

  int num_indices() const { return static_cast<int>(models_.size()); }
  int num_constraints() const { return num_indices() - 1; }

  GpModel& model(int index);
  const GpModel& model(int index) const;

  void set_query_points(const Eigen::MatrixXd& pts);
  void add_observation(int index, const Eigen::VectorXd& z, double value, long tag = -1);
  void remove_tagged(long tag);

 private:
  std::vector<GpModel> models_;
};

}  // namespace gosafe
