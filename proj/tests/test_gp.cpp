// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "gosafe/gp.hpp"
#include "gosafe/kernel.hpp"
#include "support/micro.hpp"
#include "support/oracles.hpp"

using gosafe::GpModel;
using gosafe::Kernel;
using gosafe::KernelFamily;
using gosafe::SurrogateModel;

namespace {

Eigen::VectorXd vec1(double v) {
  Eigen::VectorXd x(1);
  x << v;
  return x;
}

Kernel default_kernel(double variance = 1.0, double ls = 0.3) {
  return Kernel(KernelFamily::kMatern32, variance, vec1(ls));
}

}  // namespace

TEST_SUITE("gp") {

TEST_CASE("empty model returns the prior") {
  GpModel m(default_kernel(2.0), 0.1);
  const auto [mean, var] = m.posterior(vec1(0.4));
  CHECK(mean == doctest::Approx(0.0));
  CHECK(var == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("single observation closed form") {
  const double sigma = 0.3;
  GpModel m(default_kernel(1.7, 0.4), sigma);
  m.add(vec1(0.5), 2.0);
  const double k = 1.7;
  const auto [mean, var] = m.posterior(vec1(0.5));
  CHECK(mean == doctest::Approx(k / (k + sigma * sigma) * 2.0).epsilon(1e-12));
  CHECK(var ==
        doctest::Approx(k - k * k / (k + sigma * sigma)).epsilon(1e-10));
}

TEST_CASE("three observations match the dense oracle") {
  GpModel m(default_kernel(), 0.05);
  std::vector<Eigen::VectorXd> xs = {vec1(0.1), vec1(0.4), vec1(0.9)};
  std::vector<double> ys = {0.5, -0.2, 1.1};
  for (std::size_t i = 0; i < xs.size(); ++i) m.add(xs[i], ys[i]);
  for (double q : {0.0, 0.3, 0.55, 1.0}) {
    const auto [mean, var] = m.posterior(vec1(q));
    const auto ref = testsupport::dense_gp(m.kernel(), m.noise_std(),
                                           m.jitter(), xs, ys, vec1(q));
    CHECK(mean == doctest::Approx(ref.mean).epsilon(1e-8));
    CHECK(var == doctest::Approx(ref.variance).epsilon(1e-8));
  }
}

TEST_CASE("incremental path equals dense solve on random datasets") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    Eigen::VectorXd ls(dim);
    for (int d = 0; d < dim; ++d) ls[d] = 0.15 + 0.5 * u(rng);
    Kernel k(trial % 2 ? KernelFamily::kSquaredExponential
                       : KernelFamily::kMatern32,
             0.5 + u(rng), ls);
    const double noise = trial % 5 == 0 ? 0.0 : 0.05 + 0.2 * u(rng);
    GpModel m(k, noise);

    Eigen::MatrixXd queries(8, dim);
    for (int i = 0; i < queries.rows(); ++i)
      for (int d = 0; d < dim; ++d) queries(i, d) = u(rng);
    m.set_query_points(queries);

    std::vector<Eigen::VectorXd> xs;
    std::vector<double> ys;
    const int n = 1 + static_cast<int>(rng() % 50);
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd x(dim);
      for (int d = 0; d < dim; ++d) x[d] = u(rng);
      // Occasional exact duplicates exercise the degenerate-pivot path.
      if (i > 0 && rng() % 7 == 0) x = xs[rng() % xs.size()];
      xs.push_back(x);
      ys.push_back(gauss(rng));
      m.add(x, ys.back());
    }

    const Eigen::VectorXd mean = m.query_mean();
    const Eigen::VectorXd sd = m.query_sd();
    for (int i = 0; i < queries.rows(); ++i) {
      const auto ref =
          testsupport::dense_gp(k, noise, m.jitter(), xs, ys,
                                queries.row(i).transpose());
      CHECK(std::abs(mean[i] - ref.mean) < 1e-8);
      CHECK(std::abs(sd[i] * sd[i] - ref.variance) < 1e-8);
      const auto [pm, pv] = m.posterior(queries.row(i).transpose());
      CHECK(std::abs(pm - ref.mean) < 1e-8);
      CHECK(std::abs(pv - ref.variance) < 1e-8);
    }
  }
}

TEST_CASE("posterior variance stays within the prior range") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GpModel m(default_kernel(1.3, 0.25), 0.05);
  for (int i = 0; i < 30; ++i) m.add(vec1(u(rng)), u(rng) - 0.5);
  for (double q = 0.0; q <= 1.0; q += 0.05) {
    const auto [mean, var] = m.posterior(vec1(q));
    (void)mean;
    CHECK(var >= 0.0);
    CHECK(var <= 1.3 + 1e-9);
  }
}

TEST_CASE("variance is pointwise nonincreasing as data arrives") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GpModel m(default_kernel(1.0, 0.3), 0.1);
  Eigen::MatrixXd queries(21, 1);
  for (int i = 0; i < 21; ++i) queries(i, 0) = i / 20.0;
  m.set_query_points(queries);
  Eigen::VectorXd prev = m.query_sd();
  for (int i = 0; i < 25; ++i) {
    m.add(vec1(u(rng)), u(rng));
    const Eigen::VectorXd cur = m.query_sd();
    for (int qi = 0; qi < 21; ++qi)
      CHECK(cur[qi] * cur[qi] <= prev[qi] * prev[qi] + 1e-10);
    prev = cur;
  }
}

TEST_CASE("adding data pulls the mean toward the observation") {
  GpModel m(default_kernel(), 0.1);
  m.add(vec1(0.5), 3.0);
  const auto [mean, var] = m.posterior(vec1(0.5));
  (void)var;
  CHECK(mean > 0.0);
  CHECK(mean < 3.0);
}

TEST_CASE("duplicate observations shrink the variance") {
  GpModel m(default_kernel(), 0.2);
  m.add(vec1(0.5), 1.0);
  const double v1 = m.posterior(vec1(0.5)).second;
  m.add(vec1(0.5), 1.0);
  const double v2 = m.posterior(vec1(0.5)).second;
  CHECK(v2 < v1);
}

TEST_CASE("noiseless duplicates fall back to jitter without crashing") {
  GpModel m(default_kernel(), 0.0);
  m.add(vec1(0.5), 1.0);
  m.add(vec1(0.5), 1.0);
  m.add(vec1(0.5), 1.0);
  CHECK(m.jitter() > 0.0);
  const auto [mean, var] = m.posterior(vec1(0.5));
  CHECK(std::isfinite(mean));
  CHECK(var >= 0.0);
}

TEST_CASE("removing tagged rows restores the smaller model") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GpModel with_tags(default_kernel(), 0.1);
  GpModel without(default_kernel(), 0.1);
  Eigen::MatrixXd queries(9, 1);
  for (int i = 0; i < 9; ++i) queries(i, 0) = i / 8.0;
  with_tags.set_query_points(queries);
  without.set_query_points(queries);
  for (int i = 0; i < 12; ++i) {
    const Eigen::VectorXd x = vec1(u(rng));
    const double y = u(rng);
    with_tags.add(x, y);
    without.add(x, y);
  }
  for (int i = 0; i < 4; ++i) with_tags.add(vec1(u(rng)), u(rng), 77);
  CHECK(with_tags.remove_tagged(77));
  CHECK(!with_tags.remove_tagged(77));
  CHECK(with_tags.count() == without.count());
  const Eigen::VectorXd ma = with_tags.query_mean(), mb = without.query_mean();
  const Eigen::VectorXd sa = with_tags.query_sd(), sb = without.query_sd();
  for (int i = 0; i < 9; ++i) {
    CHECK(ma[i] == doctest::Approx(mb[i]).epsilon(1e-9));
    CHECK(sa[i] == doctest::Approx(sb[i]).epsilon(1e-9));
  }
}

TEST_CASE("surrogate dispatch keeps the other indices untouched") {
  std::vector<GpModel> ms;
  ms.emplace_back(default_kernel(), 0.1);
  ms.emplace_back(default_kernel(), 0.1);
  SurrogateModel sur(std::move(ms));
  CHECK(sur.num_indices() == 2);
  CHECK(sur.num_constraints() == 1);
  sur.add_observation(0, vec1(0.5), 2.0);
  CHECK(sur.model(0).count() == 1);
  CHECK(sur.model(1).count() == 0);
  CHECK_THROWS_AS(sur.add_observation(2, vec1(0.5), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(sur.model(-1), std::invalid_argument);
}

TEST_CASE("surrogate needs a reward model plus a constraint") {
  std::vector<GpModel> one;
  one.emplace_back(default_kernel(), 0.1);
  CHECK_THROWS_AS(SurrogateModel(std::move(one)), std::invalid_argument);
}

TEST_CASE("interval calibration on smooth draws") {
  // Functions drawn with a known norm in the kernel's space, observed with
  // noise; the 3-sigma band should cover them essentially everywhere.
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 0.1);
  long total = 0, outside = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Kernel k(KernelFamily::kSquaredExponential, 1.0, vec1(0.25));
    auto f = testsupport::draw_rkhs(rng, k, 1, 12, 0.4);
    GpModel m(k, 0.1);
    Eigen::MatrixXd queries(41, 1);
    for (int i = 0; i < 41; ++i) queries(i, 0) = i / 40.0;
    m.set_query_points(queries);
    const int n = 6 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) {
      const Eigen::VectorXd x = vec1(u(rng));
      m.add(x, f(x) + gauss(rng));
    }
    const Eigen::VectorXd mean = m.query_mean(), sd = m.query_sd();
    for (int i = 0; i < 41; ++i) {
      ++total;
      if (std::abs(f(queries.row(i).transpose()) - mean[i]) > 3.0 * sd[i])
        ++outside;
    }
  }
  CHECK(outside * 100 <= total);  // at most 1%
}

}  // TEST_SUITE
