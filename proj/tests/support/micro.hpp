// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Synthetic instances with known ground truth. FrozenSystem wraps injected
// reward/margin callables under frozen dynamics, so an experiment observes
// the functions exactly; draw_rkhs produces smooth functions whose norm in
// the kernel's function space is known, which makes confidence intervals
// provably valid for a suitable beta.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <random>
#include <vector>

#include "gosafe/beta.hpp"
#include "gosafe/gp.hpp"
#include "gosafe/grid.hpp"
#include "gosafe/kernel.hpp"
#include "gosafe/optimizer.hpp"
#include "gosafe/reachability.hpp"
#include "gosafe/rollout.hpp"
#include "gosafe/system.hpp"

namespace testsupport {

// Deterministic static map: derivative 0, reward/margins depend on (x, a)
// only. The trajectory of any experiment is a point, so observations equal
// the injected functions at (x0, a).
class FrozenSystem : public gosafe::SystemModel {
 public:
  using Fn = std::function<double(const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& a)>;

  FrozenSystem(int state_dim, int param_dim, Fn reward, std::vector<Fn> margins)
      : state_dim_(state_dim),
        param_dim_(param_dim),
        reward_(std::move(reward)),
        margins_(std::move(margins)) {}

  std::string name() const override { return "frozen"; }
  int state_dim() const override { return state_dim_; }
  int param_dim() const override { return param_dim_; }
  int control_dim() const override { return 0; }
  int constraint_count() const override {
    return static_cast<int>(margins_.size());
  }

  Eigen::VectorXd derivative(const Eigen::VectorXd& x,
                             const Eigen::VectorXd&) const override {
    return Eigen::VectorXd::Zero(x.size());
  }

  Eigen::VectorXd sample_margins(const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& a) const override {
    Eigen::VectorXd m(margins_.size());
    for (std::size_t i = 0; i < margins_.size(); ++i) m[i] = margins_[i](x, a);
    return m;
  }

  double sample_reward(const Eigen::VectorXd& x,
                       const Eigen::VectorXd& a) const override {
    return reward_(x, a);
  }

  double speed_bound() const override { return 0.0; }
  double default_horizon() const override { return 1.0; }
  double default_dt() const override { return 0.5; }
  double default_monitor_hz() const override { return 2.0; }

 private:
  int state_dim_;
  int param_dim_;
  Fn reward_;
  std::vector<Fn> margins_;
};

// Finite kernel expansion h(z) = sum_j c_j k(z, z_j) with its exact norm.
struct RkhsFunction {
  gosafe::Kernel kernel{gosafe::KernelFamily::kSquaredExponential, 1.0,
                        Eigen::VectorXd::Ones(2)};
  Eigen::MatrixXd centers;  // rows are normalized joint points
  Eigen::VectorXd coeffs;
  double norm = 0.0;

  double operator()(const Eigen::VectorXd& z) const {
    double v = 0.0;
    for (int j = 0; j < centers.rows(); ++j)
      v += coeffs[j] * kernel(z, centers.row(j).transpose());
    return v;
  }
};

inline double rkhs_norm(const gosafe::Kernel& kernel,
                        const Eigen::MatrixXd& centers,
                        const Eigen::VectorXd& coeffs) {
  const int m = static_cast<int>(centers.rows());
  Eigen::MatrixXd gram(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      gram(i, j) = kernel(centers.row(i).transpose(), centers.row(j).transpose());
  const double sq = coeffs.dot(gram * coeffs);
  return std::sqrt(std::max(sq, 0.0));
}

inline RkhsFunction draw_rkhs(std::mt19937_64& rng, gosafe::Kernel kernel,
                              int dim, int num_centers, double coeff_scale) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, coeff_scale);
  RkhsFunction f{std::move(kernel), Eigen::MatrixXd(num_centers, dim),
                 Eigen::VectorXd(num_centers), 0.0};
  for (int j = 0; j < num_centers; ++j) {
    for (int d = 0; d < dim; ++d) f.centers(j, d) = unif(rng);
    f.coeffs[j] = gauss(rng);
  }
  f.norm = rkhs_norm(f.kernel, f.centers, f.coeffs);
  return f;
}

// One self-contained optimization problem over a 1-D parameter and 1-D state
// grid with frozen dynamics, noiseless observations, and on-grid Lipschitz
// constants measured from the true constraint.
struct MicroInstance {
  std::unique_ptr<FrozenSystem> system;
  std::unique_ptr<gosafe::GridDomain> domain;
  gosafe::LipschitzConfig lip;
  gosafe::RolloutSettings rollout;
  gosafe::OptimizerSettings opt;
  double beta = 9.0;
  double gp_noise = 1e-6;
  gosafe::Kernel kernel_f{gosafe::KernelFamily::kSquaredExponential, 1.0,
                          Eigen::VectorXd::Ones(2)};
  gosafe::Kernel kernel_g{gosafe::KernelFamily::kSquaredExponential, 1.0,
                          Eigen::VectorXd::Ones(2)};
  RkhsFunction f;  // over normalized joint coordinates
  RkhsFunction g;

  gosafe::SurrogateModel make_models() const {
    std::vector<gosafe::GpModel> ms;
    ms.emplace_back(kernel_f, gp_noise);
    ms.emplace_back(kernel_g, gp_noise);
    return gosafe::SurrogateModel(std::move(ms));
  }

  gosafe::GroundTruth ground_truth() const {
    return gosafe::make_ground_truth(*system, rollout);
  }
};

// On-grid Lipschitz constant of `values` (one entry per pair) along the
// parameter or state axis. Exact for grid-to-grid reasoning: any two grid
// points are connected by unit steps along each axis.
inline double axis_lipschitz(const Eigen::VectorXd& values,
                             const gosafe::GridDomain& dom, bool param_axis) {
  const long na = dom.num_params();
  const long nx = dom.num_states();
  double best = 0.0;
  if (param_axis) {
    const double h = dom.params().step(0);
    for (long a = 0; a + 1 < na; ++a)
      for (long x = 0; x < nx; ++x)
        best = std::max(best, std::abs(values[dom.pair_id(a + 1, x)] -
                                       values[dom.pair_id(a, x)]) /
                                  h);
  } else {
    const double h = dom.states().step(0);
    for (long a = 0; a < na; ++a)
      for (long x = 0; x + 1 < nx; ++x)
        best = std::max(best, std::abs(values[dom.pair_id(a, x + 1)] -
                                       values[dom.pair_id(a, x)]) /
                                  h);
  }
  return best;
}

inline MicroInstance make_micro(unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> na_d(12, 25), nx_d(5, 8);
  std::uniform_real_distribution<double> mu_frac(0.55, 0.95);
  std::uniform_real_distribution<double> ls_d(0.18, 0.35);

  int na = na_d(rng), nx = nx_d(rng);
  while (na * nx > 200) na = na_d(rng);

  gosafe::Grid params({{-1.0, 1.0, na}});
  gosafe::Grid states({{0.0, 1.0, nx}});
  Eigen::VectorXd lo(1), hi(1);
  lo << 0.0;
  hi << 1.0;
  const double mu = mu_frac(rng) * states.step(0);

  MicroInstance inst;
  inst.kernel_f = gosafe::Kernel(gosafe::KernelFamily::kSquaredExponential, 1.0,
                                 Eigen::Vector2d(ls_d(rng), ls_d(rng)));
  inst.kernel_g = gosafe::Kernel(gosafe::KernelFamily::kSquaredExponential, 1.0,
                                 Eigen::Vector2d(ls_d(rng), ls_d(rng)));
  inst.f = draw_rkhs(rng, inst.kernel_f, 2, 24, 0.5);
  inst.g = draw_rkhs(rng, inst.kernel_g, 2, 24, 0.5);

  inst.domain = std::make_unique<gosafe::GridDomain>(params, states, lo, hi, mu);
  const gosafe::GridDomain& dom = *inst.domain;

  // Plant a comfortably safe seed at the nominal state: one extra center at
  // the seed's normalized point pushes the constraint there to +0.5.
  const long nominal = nx / 2;
  std::uniform_int_distribution<long> seed_a_d(na / 4, 3 * na / 4);
  const long seed_pair = dom.pair_id(seed_a_d(rng), nominal);
  const Eigen::VectorXd seed_z = dom.pair_point_normalized(seed_pair);
  {
    RkhsFunction& g = inst.g;
    const int m = static_cast<int>(g.centers.rows());
    g.centers.conservativeResize(m + 1, Eigen::NoChange);
    g.centers.row(m) = seed_z.transpose();
    g.coeffs.conservativeResize(m + 1);
    g.coeffs[m] = 0.0;
    const double have = g(seed_z);
    g.coeffs[m] = (0.5 - have) / g.kernel(seed_z, seed_z);
    g.norm = rkhs_norm(g.kernel, g.centers, g.coeffs);
  }

  auto eval_f = [f = inst.f, &domRef = dom](const Eigen::VectorXd& x,
                                            const Eigen::VectorXd& a) {
    Eigen::VectorXd raw(2);
    raw << a[0], x[0];
    Eigen::VectorXd z(2);
    z << domRef.params().normalize(raw.head(1))[0],
        domRef.states().normalize(raw.tail(1))[0];
    return f(z);
  };
  auto eval_g = [g = inst.g, &domRef = dom](const Eigen::VectorXd& x,
                                            const Eigen::VectorXd& a) {
    Eigen::VectorXd raw(2);
    raw << a[0], x[0];
    Eigen::VectorXd z(2);
    z << domRef.params().normalize(raw.head(1))[0],
        domRef.states().normalize(raw.tail(1))[0];
    return g(z);
  };
  inst.system = std::make_unique<FrozenSystem>(
      1, 1, FrozenSystem::Fn(eval_f), std::vector<FrozenSystem::Fn>{eval_g});

  Eigen::VectorXd g_grid(dom.num_pairs());
  for (long p = 0; p < dom.num_pairs(); ++p)
    g_grid[p] = eval_g(dom.states().point(dom.state_of(p)),
                       dom.params().point(dom.param_of(p)));

  inst.lip.L_a = std::max(1e-3, 1.15 * axis_lipschitz(g_grid, dom, true));
  inst.lip.L_x = std::max(1e-3, 1.15 * axis_lipschitz(g_grid, dom, false));
  inst.lip.epsilon = 0.05;
  inst.lip.eta = 0.0;

  inst.rollout.horizon = 1.0;
  inst.rollout.dt = 0.5;
  inst.rollout.monitor_period = 0.5;
  inst.rollout.eta = 0.0;
  inst.rollout.use_confidence_trigger = false;

  inst.beta = std::max(9.0, std::pow(1.05 * std::max(inst.f.norm, inst.g.norm), 2.0));

  inst.opt.mode = gosafe::Mode::kGoSafe;
  inst.opt.practical_s3 = false;
  inst.opt.max_iterations = 6 * dom.num_pairs() + 200;
  inst.opt.record_failures_in_gp = false;
  inst.opt.noise_std = 0.0;
  inst.opt.rng_seed = seed;
  inst.opt.nominal_state = nominal;
  inst.opt.seed_pairs = {seed_pair};
  return inst;
}

}  // namespace testsupport
