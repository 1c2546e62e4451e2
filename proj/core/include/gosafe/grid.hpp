// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <vector>

namespace gosafe {

// One uniformly spaced axis. count == 1 collapses the axis to the single
// coordinate lo (and requires hi == lo).
struct Axis {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;
};

// Tensor-product grid over a set of axes. Flat ids are row-major with the
// last axis fastest. Immutable after construction.
class Grid {
 public:
  explicit Grid(std::vector<Axis> axes);

  int dims() const { return static_cast<int>(axes_.size()); }
  long size() const { return size_; }
  const Axis& axis(int d) const { return axes_[d]; }
  double step(int d) const { return steps_[d]; }
  double coord(int d, int idx) const { return axes_[d].lo + steps_[d] * idx; }

  long flatten(const std::vector<int>& idx) const;
  std::vector<int> unflatten(long flat) const;

  Eigen::VectorXd point(long flat) const;
  // Maps each coordinate into [0, 1] over its axis extent (degenerate axes
  // map to 0). Kernels operate in these units.
  Eigen::VectorXd normalize(const Eigen::VectorXd& raw) const;
  Eigen::VectorXd normalized_point(long flat) const { return normalize(point(flat)); }

  // Per-axis nearest index with ties broken toward the smaller index;
  // equivalently the L1-nearest grid point. Coordinates outside the axis
  // range clamp to the end points.
  long nearest(const Eigen::VectorXd& raw) const;

  // L1 distance from a continuous point to the axis-aligned extent of the
  // grid (0 when inside).
  double l1_dist_to_extent(const Eigen::VectorXd& raw) const;

  // Dense pairwise Euclidean distances between all grid points, raw units.
  Eigen::MatrixXd pairwise_distances() const;

  // Neighborhood used by the border computation: all nonzero index offsets
  // in {-1,0,1}^d whose continuous L1 length is < two_mu. Degenerate axes
  // contribute no offsets. touches_outside marks grid points for which some
  // such offset leaves the grid.
  struct Stencil {
    std::vector<std::vector<long>> in_grid;  // per grid point
    std::vector<char> touches_outside;       // per grid point
  };
  Stencil stencil(double two_mu) const;

 private:
  std::vector<Axis> axes_;
  std::vector<double> steps_;
  std::vector<long> strides_;
  long size_ = 1;
};

// Lipschitz propagation constants and the loop tolerances that travel with
// them. Raw (unnormalized) units throughout.
struct LipschitzConfig {
  double L_a = 0.0;
  double L_x = 0.0;
  double epsilon = 0.05;
  double eta = 0.0;
};

// The joint search grid over policy parameters and discretized initial
// conditions. Pair ids are a_flat * num_states + x_flat.
class GridDomain {
 public:
  GridDomain(Grid params, Grid states, Eigen::VectorXd state_lo,
             Eigen::VectorXd state_hi, double mu);

  const Grid& params() const { return params_; }
  const Grid& states() const { return states_; }
  double mu() const { return mu_; }
  const Eigen::VectorXd& state_lo() const { return state_lo_; }
  const Eigen::VectorXd& state_hi() const { return state_hi_; }

  long num_params() const { return params_.size(); }
  long num_states() const { return states_.size(); }
  long num_pairs() const { return params_.size() * states_.size(); }

  long pair_id(long a_flat, long x_flat) const { return a_flat * states_.size() + x_flat; }
  long param_of(long pair) const { return pair / states_.size(); }
  long state_of(long pair) const { return pair % states_.size(); }

  // Joint point for a pair, raw and kernel (normalized) coordinates.
  Eigen::VectorXd pair_point(long pair) const;
  Eigen::VectorXd pair_point_normalized(long pair) const;

  bool in_bounds(const Eigen::VectorXd& x) const;

  // [x]_mu: nearest state grid point in L1, lower-index tie-break. States
  // outside the bounds by more than mu (L1 distance to the box) are a
  // domain error; lesser excursions clamp.
  long quantize(const Eigen::VectorXd& x) const;

  // L_a·|a-a'| + L_x·(|x-x'| + mu), the amount a lower bound pays when
  // propagated between grid pairs. Euclidean, raw units.
  double lipschitz_slack(const LipschitzConfig& cfg, long pair_from, long pair_to) const;

  // Cached distance tables (raw Euclidean).
  const Eigen::MatrixXd& param_dist() const { return param_dist_; }
  const Eigen::MatrixXd& state_dist() const { return state_dist_; }

 private:
  Grid params_;
  Grid states_;
  Eigen::VectorXd state_lo_, state_hi_;
  double mu_;
  Eigen::MatrixXd param_dist_, state_dist_;
};

}  // namespace gosafe
