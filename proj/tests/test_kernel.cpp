// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>

#include "gosafe/kernel.hpp"

using gosafe::Kernel;
using gosafe::KernelFamily;

namespace {
Eigen::VectorXd vec1(double v) {
  Eigen::VectorXd x(1);
  x << v;
  return x;
}
}  // namespace

TEST_SUITE("kernel") {

TEST_CASE("zero distance returns the variance") {
  Kernel k(KernelFamily::kMatern32, 5.0, vec1(0.7));
  CHECK(k(vec1(0.3), vec1(0.3)) == doctest::Approx(5.0).epsilon(1e-14));
  Kernel se(KernelFamily::kSquaredExponential, 2.5, vec1(0.2));
  CHECK(se(vec1(-1.0), vec1(-1.0)) == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("matern value at unit distance") {
  Kernel k(KernelFamily::kMatern32, 1.0, vec1(1.0));
  const double expected = (1.0 + std::sqrt(3.0)) * std::exp(-std::sqrt(3.0));
  const double got = k(vec1(0.0), vec1(1.0));
  CHECK(got == doctest::Approx(expected).epsilon(1e-14));
  CHECK(got == doctest::Approx(0.48335).epsilon(2e-5));
}

TEST_CASE("squared exponential decays to zero") {
  Kernel k(KernelFamily::kSquaredExponential, 1.0, vec1(1.0));
  CHECK(k(vec1(0.0), vec1(100.0)) < 1e-12);
}

TEST_CASE("symmetry") {
  Eigen::VectorXd ls(2);
  ls << 0.3, 1.1;
  Kernel k(KernelFamily::kMatern32, 2.0, ls);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 50; ++t) {
    Eigen::VectorXd a(2), b(2);
    a << u(rng), u(rng);
    b << u(rng), u(rng);
    CHECK(k(a, b) == doctest::Approx(k(b, a)).epsilon(1e-15));
  }
}

TEST_CASE("lengthscales rescale distance per dimension") {
  Eigen::VectorXd ls(2);
  ls << 0.5, 2.0;
  Kernel k(KernelFamily::kSquaredExponential, 1.0, ls);
  // (1,0) offset at lengthscale 0.5 equals (0,4) offset at lengthscale 2.
  Eigen::VectorXd o = Eigen::VectorXd::Zero(2), a(2), b(2);
  a << 1.0, 0.0;
  b << 0.0, 4.0;
  CHECK(k(o, a) == doctest::Approx(k(o, b)).epsilon(1e-14));
}

TEST_CASE("dimension mismatch is rejected") {
  Kernel k(KernelFamily::kMatern32, 1.0, vec1(1.0));
  Eigen::VectorXd two(2);
  two << 0.0, 0.0;
  CHECK_THROWS_AS(k(two, two), std::invalid_argument);
}

TEST_CASE("bad hyperparameters are rejected") {
  CHECK_THROWS_AS(Kernel(KernelFamily::kMatern32, 0.0, vec1(1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(Kernel(KernelFamily::kMatern32, 1.0, vec1(-0.1)),
                  std::invalid_argument);
}

TEST_CASE("column matches elementwise evaluation") {
  Eigen::VectorXd ls(2);
  ls << 0.4, 0.9;
  Kernel k(KernelFamily::kMatern32, 1.5, ls);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd pts(7, 2);
  for (int i = 0; i < 7; ++i) {
    pts(i, 0) = u(rng);
    pts(i, 1) = u(rng);
  }
  Eigen::VectorXd q(2);
  q << u(rng), u(rng);
  const Eigen::VectorXd col = k.column(q, pts);
  REQUIRE(col.size() == 7);
  for (int i = 0; i < 7; ++i)
    CHECK(col[i] == doctest::Approx(k(q, pts.row(i).transpose())).epsilon(1e-15));
}

TEST_CASE("gram matrices with jitter admit a Cholesky factorization") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 10);
    Eigen::VectorXd ls(2);
    ls << 0.2 + u(rng), 0.2 + u(rng);
    Kernel k(trial % 2 ? KernelFamily::kMatern32
                       : KernelFamily::kSquaredExponential,
             0.5 + u(rng), ls);
    Eigen::MatrixXd pts(n, 2);
    for (int i = 0; i < n; ++i) {
      pts(i, 0) = u(rng);
      pts(i, 1) = u(rng);
    }
    Eigen::MatrixXd gram(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        gram(i, j) = k(pts.row(i).transpose(), pts.row(j).transpose());
    gram.diagonal().array() += 1e-8 * k.variance();
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    CHECK(llt.info() == Eigen::Success);
  }
}

}  // TEST_SUITE
