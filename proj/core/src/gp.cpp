// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#include "gosafe/gp.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>

#include "gosafe/errors.hpp"

namespace gosafe {

namespace {
// Pivot floor for the incremental append; anything at or below this forces a
// jittered refit rather than a garbage Cholesky row.
double pivot_floor(double variance) { return 1e-12 * variance; }
}  // namespace

GpModel::GpModel(Kernel kernel, double noise_std)
    : kernel_(std::move(kernel)), noise_std_(noise_std) {
  if (noise_std_ < 0.0) throw std::invalid_argument("GpModel: noise_std must be >= 0");
}

void GpModel::set_query_points(Eigen::MatrixXd pts) {
  if (pts.cols() != kernel_.dims())
    throw std::invalid_argument("GpModel: query point dimension mismatch");
  query_ = std::move(pts);
  recompute_query_cache_();
}

void GpModel::ensure_capacity_(int rows, int valid) {
  if (chol_.rows() >= rows) return;
  int cap = chol_.rows() == 0 ? 16 : static_cast<int>(chol_.rows());
  while (cap < rows) cap *= 2;
  Eigen::MatrixXd chol = Eigen::MatrixXd::Zero(cap, cap);
  chol.topLeftCorner(valid, valid) = chol_.topLeftCorner(valid, valid);
  chol_ = std::move(chol);
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(cap);
  alpha.head(valid) = alpha_.head(valid);
  alpha_ = std::move(alpha);
  if (query_.rows() > 0 && cross_.cols() == query_.rows()) {
    Eigen::MatrixXd cross(cap, query_.rows());
    cross.topRows(valid) = cross_.topRows(valid);
    cross_ = std::move(cross);
  }
}

void GpModel::add(const Eigen::VectorXd& z, double y, long tag) {
  if (z.size() != kernel_.dims())
    throw std::invalid_argument("GpModel: observation dimension mismatch");
  if (!z.allFinite() || !std::isfinite(y))
    throw NumericsError("GpModel: non-finite observation");

  const int n = count();
  ensure_capacity_(n + 1, n);
  x_.push_back(z);
  y_.push_back(y);
  tags_.push_back(tag);

  Eigen::VectorXd kx(n);
  for (int i = 0; i < n; ++i) kx[i] = kernel_(z, x_[i]);
  Eigen::VectorXd c =
      chol_.topLeftCorner(n, n).triangularView<Eigen::Lower>().solve(kx);
  const double d = kernel_(z, z) + noise_std_ * noise_std_ + jitter_;
  const double s = d - c.squaredNorm();
  if (!(s > pivot_floor(kernel_.variance()))) {
    refit_();  // escalates jitter as needed
    return;
  }
  const double ell = std::sqrt(s);
  chol_.row(n).head(n) = c.transpose();
  chol_(n, n) = ell;
  alpha_[n] = (y - c.dot(alpha_.head(n))) / ell;

  if (query_.rows() > 0) {
    Eigen::VectorXd kq = kernel_.column(z, query_);
    Eigen::RowVectorXd v =
        (kq.transpose() - c.transpose() * cross_.topRows(n)) / ell;
    cross_.row(n) = v;
    mean_q_ += alpha_[n] * v.transpose();
    var_q_raw_ -= v.cwiseProduct(v).transpose();
    if (!mean_q_.allFinite()) throw NumericsError("GpModel: posterior diverged");
  }
}

bool GpModel::remove_tagged(long tag) {
  bool removed = false;
  for (size_t i = x_.size(); i-- > 0;) {
    if (tags_[i] == tag) {
      x_.erase(x_.begin() + i);
      y_.erase(y_.begin() + i);
      tags_.erase(tags_.begin() + i);
      removed = true;
    }
  }
  if (removed) {
    jitter_ = 0.0;  // the reduced dataset may no longer need it
    refit_();
  }
  return removed;
}

void GpModel::refit_() {
  const int n = count();
  ensure_capacity_(n, 0);
  const double variance = kernel_.variance();

  Eigen::MatrixXd gram(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      gram(i, j) = kernel_(x_[i], x_[j]);
      gram(j, i) = gram(i, j);
    }
  }

  const double noise_var = noise_std_ * noise_std_;
  for (;;) {
    Eigen::MatrixXd reg = gram;
    reg.diagonal().array() += noise_var + jitter_;
    Eigen::LLT<Eigen::MatrixXd> llt(reg);
    if (llt.info() == Eigen::Success) {
      chol_.topLeftCorner(n, n) = llt.matrixL();
      break;
    }
    const double next = jitter_ == 0.0 ? 1e-8 * variance : 2.0 * jitter_;
    if (next > 1e-4 * variance)
      throw NumericsError("GpModel: Gram matrix not factorizable at maximum jitter");
    jitter_ = next;
  }

  Eigen::Map<const Eigen::VectorXd> y(y_.data(), n);
  alpha_.head(n) =
      chol_.topLeftCorner(n, n).triangularView<Eigen::Lower>().solve(y);
  recompute_query_cache_();
}

void GpModel::recompute_query_cache_() {
  const long p = query_.rows();
  if (p == 0) return;
  const int n = count();
  if (cross_.rows() < chol_.rows() || cross_.cols() != p)
    cross_ = Eigen::MatrixXd::Zero(std::max<long>(chol_.rows(), 16), p);
  if (n > 0) {
    Eigen::MatrixXd kxq(n, p);
    for (int i = 0; i < n; ++i) kxq.row(i) = kernel_.column(x_[i], query_).transpose();
    cross_.topRows(n) =
        chol_.topLeftCorner(n, n).triangularView<Eigen::Lower>().solve(kxq);
    mean_q_ = cross_.topRows(n).transpose() * alpha_.head(n);
    var_q_raw_ = Eigen::VectorXd::Constant(p, kernel_.variance()) -
                 cross_.topRows(n).colwise().squaredNorm().transpose();
  } else {
    mean_q_ = Eigen::VectorXd::Zero(p);
    var_q_raw_ = Eigen::VectorXd::Constant(p, kernel_.variance());
  }
}

Eigen::VectorXd GpModel::query_mean() const {
  if (query_.rows() == 0) throw std::logic_error("GpModel: no query points attached");
  return mean_q_;
}

Eigen::VectorXd GpModel::query_sd() const {
  if (query_.rows() == 0) throw std::logic_error("GpModel: no query points attached");
  return var_q_raw_.cwiseMax(0.0).cwiseSqrt();
}

std::pair<double, double> GpModel::posterior(const Eigen::VectorXd& z) const {
  if (z.size() != kernel_.dims())
    throw std::invalid_argument("GpModel: query dimension mismatch");
  const int n = count();
  if (n == 0) return {0.0, kernel_(z, z)};
  Eigen::VectorXd kx(n);
  for (int i = 0; i < n; ++i) kx[i] = kernel_(z, x_[i]);
  Eigen::VectorXd c =
      chol_.topLeftCorner(n, n).triangularView<Eigen::Lower>().solve(kx);
  const double mean = c.dot(alpha_.head(n));
  const double var = kernel_(z, z) - c.squaredNorm();
  return {mean, var < 0.0 ? 0.0 : var};
}

SurrogateModel::SurrogateModel(std::vector<GpModel> models) : models_(std::move(models)) {
  if (models_.size() < 2)
    throw std::invalid_argument("SurrogateModel: needs a reward model and >= 1 constraint");
}

GpModel& SurrogateModel::model(int index) {
  if (index < 0 || index >= num_indices())
    throw std::invalid_argument("SurrogateModel: index out of range");
  return models_[index];
}

const GpModel& SurrogateModel::model(int index) const {
  return const_cast<SurrogateModel*>(this)->model(index);
}

void SurrogateModel::set_query_points(const Eigen::MatrixXd& pts) {
  for (GpModel& m : models_) m.set_query_points(pts);
}

void SurrogateModel::add_observation(int index, const Eigen::VectorXd& z, double value,
                                     long tag) {
  model(index).add(z, value, tag);
}

void SurrogateModel::remove_tagged(long tag) {
  for (GpModel& m : models_) m.remove_tagged(tag);
}

}  // namespace gosafe
