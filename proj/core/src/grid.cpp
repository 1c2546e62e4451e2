// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#include "gosafe/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace gosafe {

Grid::Grid(std::vector<Axis> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw std::invalid_argument("Grid: no axes");
  steps_.resize(axes_.size());
  for (size_t d = 0; d < axes_.size(); ++d) {
    const Axis& ax = axes_[d];
    if (ax.count < 1) throw std::invalid_argument("Grid: axis count must be >= 1");
    if (ax.count == 1) {
      if (ax.hi != ax.lo) throw std::invalid_argument("Grid: degenerate axis needs hi == lo");
      steps_[d] = 0.0;
    } else {
      if (!(ax.hi > ax.lo)) throw std::invalid_argument("Grid: axis needs hi > lo");
      steps_[d] = (ax.hi - ax.lo) / (ax.count - 1);
    }
    size_ *= ax.count;
  }
  strides_.assign(axes_.size(), 1);
  for (int d = static_cast<int>(axes_.size()) - 2; d >= 0; --d)
    strides_[d] = strides_[d + 1] * axes_[d + 1].count;
}

long Grid::flatten(const std::vector<int>& idx) const {
  if (idx.size() != axes_.size()) throw std::invalid_argument("Grid::flatten: rank mismatch");
  long flat = 0;
  for (size_t d = 0; d < idx.size(); ++d) {
    if (idx[d] < 0 || idx[d] >= axes_[d].count)
      throw std::out_of_range("Grid::flatten: index outside axis");
    flat += strides_[d] * idx[d];
  }
  return flat;
}

std::vector<int> Grid::unflatten(long flat) const {
  if (flat < 0 || flat >= size_) throw std::out_of_range("Grid::unflatten: bad flat id");
  std::vector<int> idx(axes_.size());
  for (size_t d = 0; d < axes_.size(); ++d) {
    idx[d] = static_cast<int>(flat / strides_[d]);
    flat %= strides_[d];
  }
  return idx;
}

Eigen::VectorXd Grid::point(long flat) const {
  const std::vector<int> idx = unflatten(flat);
  Eigen::VectorXd p(dims());
  for (int d = 0; d < dims(); ++d) p[d] = coord(d, idx[d]);
  return p;
}

Eigen::VectorXd Grid::normalize(const Eigen::VectorXd& raw) const {
  if (raw.size() != dims()) throw std::invalid_argument("Grid::normalize: rank mismatch");
  Eigen::VectorXd z(dims());
  for (int d = 0; d < dims(); ++d) {
    const Axis& ax = axes_[d];
    z[d] = (ax.count == 1) ? 0.0 : (raw[d] - ax.lo) / (ax.hi - ax.lo);
  }
  return z;
}

long Grid::nearest(const Eigen::VectorXd& raw) const {
  if (raw.size() != dims()) throw std::invalid_argument("Grid::nearest: rank mismatch");
  long flat = 0;
  for (int d = 0; d < dims(); ++d) {
    const Axis& ax = axes_[d];
    int idx = 0;
    if (ax.count > 1) {
      // ceil(v - 0.5) rounds half down, which is the lower-index tie-break.
      const double v = (raw[d] - ax.lo) / steps_[d];
      idx = static_cast<int>(std::ceil(v - 0.5));
      if (idx < 0) idx = 0;
      if (idx >= ax.count) idx = ax.count - 1;
    }
    flat += strides_[d] * idx;
  }
  return flat;
}

double Grid::l1_dist_to_extent(const Eigen::VectorXd& raw) const {
  double dist = 0.0;
  for (int d = 0; d < dims(); ++d) {
    const Axis& ax = axes_[d];
    if (raw[d] < ax.lo) dist += ax.lo - raw[d];
    if (raw[d] > ax.hi) dist += raw[d] - ax.hi;
  }
  return dist;
}

Eigen::MatrixXd Grid::pairwise_distances() const {
  Eigen::MatrixXd pts(size_, dims());
  for (long i = 0; i < size_; ++i) pts.row(i) = point(i).transpose();
  Eigen::MatrixXd dist(size_, size_);
  for (long i = 0; i < size_; ++i) {
    dist(i, i) = 0.0;
    for (long j = 0; j < i; ++j) {
      const double d = (pts.row(i) - pts.row(j)).norm();
      dist(i, j) = d;
      dist(j, i) = d;
    }
  }
  return dist;
}

Grid::Stencil Grid::stencil(double two_mu) const {
  // Enumerate index offsets in {-1,0,1}^d (degenerate axes pinned to 0) and
  // keep those with continuous L1 length < two_mu.
  std::vector<std::vector<int>> offsets;
  std::vector<int> cur(dims(), -1);
  for (;;) {
    bool all_zero = true;
    double len = 0.0;
    bool valid = true;
    for (int d = 0; d < dims(); ++d) {
      if (axes_[d].count == 1 && cur[d] != 0) { valid = false; break; }
      if (cur[d] != 0) all_zero = false;
      len += std::abs(cur[d]) * steps_[d];
    }
    if (valid && !all_zero && len < two_mu) offsets.push_back(cur);
    int d = dims() - 1;
    while (d >= 0 && cur[d] == 1) cur[d--] = -1;
    if (d < 0) break;
    ++cur[d];
  }

  Stencil st;
  st.in_grid.resize(size_);
  st.touches_outside.assign(size_, 0);
  for (long flat = 0; flat < size_; ++flat) {
    const std::vector<int> idx = unflatten(flat);
    for (const auto& off : offsets) {
      long nb = 0;
      bool inside = true;
      for (int d = 0; d < dims(); ++d) {
        const int j = idx[d] + off[d];
        if (j < 0 || j >= axes_[d].count) { inside = false; break; }
        nb += strides_[d] * j;
      }
      if (inside)
        st.in_grid[flat].push_back(nb);
      else
        st.touches_outside[flat] = 1;
    }
  }
  return st;
}

GridDomain::GridDomain(Grid params, Grid states, Eigen::VectorXd state_lo,
                       Eigen::VectorXd state_hi, double mu)
    : params_(std::move(params)),
      states_(std::move(states)),
      state_lo_(std::move(state_lo)),
      state_hi_(std::move(state_hi)),
      mu_(mu) {
  if (mu_ <= 0.0) throw std::invalid_argument("GridDomain: mu must be positive");
  if (state_lo_.size() != states_.dims() || state_hi_.size() != states_.dims())
    throw std::invalid_argument("GridDomain: state bounds rank mismatch");
  for (int d = 0; d < states_.dims(); ++d) {
    const Axis& ax = states_.axis(d);
    if (ax.lo < state_lo_[d] || ax.hi > state_hi_[d])
      throw std::invalid_argument("GridDomain: state grid leaves state bounds");
  }
  param_dist_ = params_.pairwise_distances();
  state_dist_ = states_.pairwise_distances();
}

Eigen::VectorXd GridDomain::pair_point(long pair) const {
  Eigen::VectorXd p(params_.dims() + states_.dims());
  p.head(params_.dims()) = params_.point(param_of(pair));
  p.tail(states_.dims()) = states_.point(state_of(pair));
  return p;
}

Eigen::VectorXd GridDomain::pair_point_normalized(long pair) const {
  Eigen::VectorXd p(params_.dims() + states_.dims());
  p.head(params_.dims()) = params_.normalized_point(param_of(pair));
  p.tail(states_.dims()) = states_.normalized_point(state_of(pair));
  return p;
}

bool GridDomain::in_bounds(const Eigen::VectorXd& x) const {
  for (int d = 0; d < states_.dims(); ++d)
    if (x[d] < state_lo_[d] || x[d] > state_hi_[d]) return false;
  return true;
}

long GridDomain::quantize(const Eigen::VectorXd& x) const {
  double excess = 0.0;
  for (int d = 0; d < states_.dims(); ++d) {
    if (x[d] < state_lo_[d]) excess += state_lo_[d] - x[d];
    if (x[d] > state_hi_[d]) excess += x[d] - state_hi_[d];
  }
  if (excess > mu_ + 1e-12)
    throw std::domain_error("GridDomain::quantize: state beyond bounds by more than mu");
  return states_.nearest(x);
}

double GridDomain::lipschitz_slack(const LipschitzConfig& cfg, long pair_from,
                                   long pair_to) const {
  const double da = param_dist_(param_of(pair_from), param_of(pair_to));
  const double dx = state_dist_(state_of(pair_from), state_of(pair_to));
  return cfg.L_a * da + cfg.L_x * (dx + mu_);
}

}  // namespace gosafe
