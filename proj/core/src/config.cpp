// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#include "gosafe/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gosafe/errors.hpp"
#include "gosafe/pendulum.hpp"
#include "gosafe/poly1d.hpp"

namespace gosafe {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path + ": " + msg);
}

std::string join_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(path.empty() ? "<config>" : path, "must be an object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key()))
      fail(join_path(path, item.key()), "unknown key");
  }
}

const json& require(const json& obj, const std::string& path,
                    const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(join_path(path, key), "missing required key");
  return *it;
}

double get_number(const json& obj, const std::string& path,
                  const std::string& key) {
  const json& v = require(obj, path, key);
  if (!v.is_number()) fail(join_path(path, key), "must be a number");
  return v.get<double>();
}

double get_number_or(const json& obj, const std::string& path,
                     const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  return get_number(obj, path, key);
}

long get_integer(const json& obj, const std::string& path,
                 const std::string& key) {
  const json& v = require(obj, path, key);
  if (!v.is_number_integer()) fail(join_path(path, key), "must be an integer");
  return v.get<long>();
}

long get_integer_or(const json& obj, const std::string& path,
                    const std::string& key, long fallback) {
  if (!obj.contains(key)) return fallback;
  return get_integer(obj, path, key);
}

bool get_bool_or(const json& obj, const std::string& path,
                 const std::string& key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) fail(join_path(path, key), "must be a boolean");
  return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& path,
                       const std::string& key) {
  const json& v = require(obj, path, key);
  if (!v.is_string()) fail(join_path(path, key), "must be a string");
  return v.get<std::string>();
}

std::vector<double> get_vector(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) fail(path, "must be a non-empty array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) fail(path, "must contain numbers only");
    out.push_back(e.get<double>());
  }
  return out;
}

Axis parse_axis(const json& v, const std::string& path) {
  check_keys(v, path, {"min", "max", "count"});
  Axis ax;
  ax.lo = get_number(v, path, "min");
  ax.hi = get_number(v, path, "max");
  const long count = get_integer(v, path, "count");
  if (count < 1) fail(join_path(path, "count"), "must be at least 1");
  if (ax.hi < ax.lo) fail(join_path(path, "max"), "must be >= min");
  if (count == 1 && ax.hi != ax.lo)
    fail(join_path(path, "count"), "count 1 requires min == max");
  if (count > 1 && ax.hi == ax.lo)
    fail(join_path(path, "count"), "degenerate axis requires count 1");
  ax.count = static_cast<int>(count);
  return ax;
}

std::vector<Axis> parse_axes(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) fail(path, "must be a non-empty array");
  std::vector<Axis> axes;
  for (std::size_t i = 0; i < v.size(); ++i)
    axes.push_back(parse_axis(v[i], path + "[" + std::to_string(i) + "]"));
  return axes;
}

KernelFamily parse_family(const std::string& s, const std::string& path) {
  if (s == "matern32") return KernelFamily::kMatern32;
  if (s == "squared_exponential") return KernelFamily::kSquaredExponential;
  fail(path, "must be 'matern32' or 'squared_exponential'");
}

std::string family_name(KernelFamily f) {
  return f == KernelFamily::kMatern32 ? "matern32" : "squared_exponential";
}

// Coordinates in seed/nominal specs must land on grid points.
long resolve_grid_point(const Grid& grid, const std::vector<double>& coords,
                        const std::string& path) {
  if (static_cast<int>(coords.size()) != grid.dims())
    fail(path, "wrong dimension for this benchmark");
  Eigen::VectorXd v(coords.size());
  for (std::size_t d = 0; d < coords.size(); ++d) v[d] = coords[d];
  const long id = grid.nearest(v);
  if ((grid.point(id) - v).lpNorm<Eigen::Infinity>() > 1e-9)
    fail(path, "not a grid point");
  return id;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("<config>: ") + e.what());
  }
  check_keys(root, "",
             {"benchmark", "seed", "mode", "output_dir", "grid", "gp", "beta",
              "safety", "stages", "simulation", "initial_safe",
              "nominal_state", "export_trajectories", "confidence_trigger"});

  ExperimentConfig cfg;
  cfg.benchmark = get_string(root, "", "benchmark");
  if (cfg.benchmark != "poly1d" && cfg.benchmark != "pendulum")
    fail("benchmark", "must be 'poly1d' or 'pendulum'");
  std::unique_ptr<SystemModel> sys = build_system(cfg);

  {
    const long seed = get_integer_or(root, "", "seed", 0);
    if (seed < 0) fail("seed", "must be nonnegative");
    cfg.seed = static_cast<unsigned long long>(seed);
  }
  if (root.contains("mode")) {
    cfg.mode = get_string(root, "", "mode");
    if (cfg.mode != "gosafe" && cfg.mode != "safeopt")
      fail("mode", "must be 'gosafe' or 'safeopt'");
  }
  if (root.contains("output_dir")) cfg.output_dir = get_string(root, "", "output_dir");

  // grid
  {
    const json& g = require(root, "", "grid");
    check_keys(g, "grid", {"params", "states", "state_bounds", "mu"});
    cfg.param_axes = parse_axes(require(g, "grid", "params"), "grid.params");
    cfg.state_axes = parse_axes(require(g, "grid", "states"), "grid.states");
    if (static_cast<int>(cfg.param_axes.size()) != sys->param_dim())
      fail("grid.params", "wrong number of axes for this benchmark");
    if (static_cast<int>(cfg.state_axes.size()) != sys->state_dim())
      fail("grid.states", "wrong number of axes for this benchmark");
    cfg.mu = get_number(g, "grid", "mu");
    if (cfg.mu <= 0.0) fail("grid.mu", "must be positive");
    double half_diag_sq = 0.0;
    for (const Axis& ax : cfg.state_axes) {
      const double step = ax.count > 1 ? (ax.hi - ax.lo) / (ax.count - 1) : 0.0;
      half_diag_sq += 0.25 * step * step;
    }
    if (cfg.mu < std::sqrt(half_diag_sq) - 1e-12)
      fail("grid.mu", "smaller than the state cell half-diagonal");
    if (g.contains("state_bounds")) {
      const json& b = g.at("state_bounds");
      check_keys(b, "grid.state_bounds", {"min", "max"});
      cfg.state_lo = get_vector(require(b, "grid.state_bounds", "min"),
                                "grid.state_bounds.min");
      cfg.state_hi = get_vector(require(b, "grid.state_bounds", "max"),
                                "grid.state_bounds.max");
    } else {
      for (const Axis& ax : cfg.state_axes) {
        cfg.state_lo.push_back(ax.lo);
        cfg.state_hi.push_back(ax.hi);
      }
    }
    if (cfg.state_lo.size() != cfg.state_axes.size() ||
        cfg.state_hi.size() != cfg.state_axes.size())
      fail("grid.state_bounds", "wrong dimension");
    double lo_excess = 0.0, hi_excess = 0.0;
    for (std::size_t d = 0; d < cfg.state_axes.size(); ++d) {
      if (cfg.state_hi[d] < cfg.state_lo[d])
        fail("grid.state_bounds", "max must be >= min");
      lo_excess += std::max(0.0, cfg.state_axes[d].lo - cfg.state_lo[d]);
      hi_excess += std::max(0.0, cfg.state_hi[d] - cfg.state_axes[d].hi);
    }
    if (lo_excess > cfg.mu || hi_excess > cfg.mu)
      fail("grid.state_bounds", "extends beyond the state grid by more than mu");
  }

  // simulation (before safety so the default eta can use the period)
  {
    cfg.horizon = sys->default_horizon();
    cfg.dt = sys->default_dt();
    cfg.monitor_hz = sys->default_monitor_hz();
    if (root.contains("simulation")) {
      const json& s = root.at("simulation");
      check_keys(s, "simulation", {"horizon", "dt", "monitor_hz"});
      cfg.horizon = get_number_or(s, "simulation", "horizon", cfg.horizon);
      cfg.dt = get_number_or(s, "simulation", "dt", cfg.dt);
      cfg.monitor_hz = get_number_or(s, "simulation", "monitor_hz", cfg.monitor_hz);
    }
    if (cfg.horizon <= 0.0) fail("simulation.horizon", "must be positive");
    if (cfg.dt <= 0.0) fail("simulation.dt", "must be positive");
    if (cfg.monitor_hz <= 0.0) fail("simulation.monitor_hz", "must be positive");
    const double period = 1.0 / cfg.monitor_hz;
    const double steps = period / cfg.dt;
    if (steps < 1.0 - 1e-9 || std::abs(steps - std::round(steps)) > 1e-6)
      fail("simulation.monitor_hz", "monitor period must be a multiple of dt");
    const double samples = cfg.horizon / period;
    if (samples < 1.0 - 1e-9 || std::abs(samples - std::round(samples)) > 1e-6)
      fail("simulation.horizon", "must be a multiple of the monitor period");
  }

  // safety
  {
    const json& s = require(root, "", "safety");
    check_keys(s, "safety", {"L_a", "L_x", "epsilon", "eta"});
    cfg.L_a = get_number(s, "safety", "L_a");
    cfg.L_x = get_number(s, "safety", "L_x");
    if (cfg.L_a < 0.0) fail("safety.L_a", "must be nonnegative");
    if (cfg.L_x < 0.0) fail("safety.L_x", "must be nonnegative");
    cfg.epsilon = get_number_or(s, "safety", "epsilon", 0.05);
    if (cfg.epsilon <= 0.0) fail("safety.epsilon", "must be positive");
    const double default_eta =
        2.0 * sys->speed_bound() / cfg.monitor_hz + cfg.mu;
    cfg.eta = get_number_or(s, "safety", "eta", default_eta);
    if (cfg.eta < 0.0) fail("safety.eta", "must be nonnegative");
  }

  // gp
  {
    const json& g = require(root, "", "gp");
    check_keys(g, "gp", {"noise_std", "models"});
    cfg.noise_std = get_number(g, "gp", "noise_std");
    if (cfg.noise_std < 0.0) fail("gp.noise_std", "must be nonnegative");
    const json& models = require(g, "gp", "models");
    if (!models.is_array()) fail("gp.models", "must be an array");
    if (static_cast<int>(models.size()) != 1 + sys->constraint_count())
      fail("gp.models", "needs one reward model plus one per constraint");
    const std::size_t dims = cfg.param_axes.size() + cfg.state_axes.size();
    for (std::size_t i = 0; i < models.size(); ++i) {
      const std::string path = "gp.models[" + std::to_string(i) + "]";
      const json& m = models[i];
      check_keys(m, path, {"kernel", "variance", "lengthscales"});
      KernelConfig kc;
      kc.family = parse_family(get_string(m, path, "kernel"), path + ".kernel");
      kc.variance = get_number(m, path, "variance");
      if (kc.variance <= 0.0) fail(path + ".variance", "must be positive");
      kc.lengthscales =
          get_vector(require(m, path, "lengthscales"), path + ".lengthscales");
      if (kc.lengthscales.size() != dims)
        fail(path + ".lengthscales", "wrong dimension (params then states)");
      for (double l : kc.lengthscales)
        if (l <= 0.0) fail(path + ".lengthscales", "must be positive");
      cfg.models.push_back(std::move(kc));
    }
  }

  // beta
  {
    const json& b = require(root, "", "beta");
    const std::string mode = get_string(b, "beta", "mode");
    if (mode == "constant") {
      check_keys(b, "beta", {"mode", "value"});
      cfg.beta.mode = mode;
      cfg.beta.value = get_number(b, "beta", "value");
      if (cfg.beta.value <= 0.0) fail("beta.value", "must be positive");
    } else if (mode == "theoretical") {
      check_keys(b, "beta", {"mode", "bound", "sigma", "delta", "gamma_coeff"});
      cfg.beta.mode = mode;
      cfg.beta.bound = get_number(b, "beta", "bound");
      cfg.beta.sigma = get_number(b, "beta", "sigma");
      cfg.beta.delta = get_number(b, "beta", "delta");
      cfg.beta.gamma_coeff = get_number(b, "beta", "gamma_coeff");
      if (cfg.beta.bound < 0.0) fail("beta.bound", "must be nonnegative");
      if (cfg.beta.sigma < 0.0) fail("beta.sigma", "must be nonnegative");
      if (cfg.beta.delta <= 0.0 || cfg.beta.delta >= 1.0)
        fail("beta.delta", "must be in (0, 1)");
      if (cfg.beta.gamma_coeff < 0.0) fail("beta.gamma_coeff", "must be nonnegative");
    } else {
      fail("beta.mode", "must be 'constant' or 'theoretical'");
    }
  }

  // stages
  if (root.contains("stages")) {
    const json& s = root.at("stages");
    check_keys(s, "stages",
               {"s1_budget", "s2_budget", "s3_budget", "max_iterations",
                "practical_mode", "record_failures_in_gp"});
    cfg.s1_budget = get_integer_or(s, "stages", "s1_budget", 0);
    cfg.s2_budget = get_integer_or(s, "stages", "s2_budget", 0);
    cfg.s3_budget = get_integer_or(s, "stages", "s3_budget", 0);
    cfg.max_iterations = get_integer_or(s, "stages", "max_iterations", 1000);
    cfg.practical_mode = get_bool_or(s, "stages", "practical_mode", true);
    cfg.record_failures_in_gp =
        get_bool_or(s, "stages", "record_failures_in_gp", true);
    if (cfg.s1_budget < 0 || cfg.s2_budget < 0 || cfg.s3_budget < 0)
      fail("stages", "budgets must be nonnegative (0 = uncapped)");
    if (cfg.max_iterations < 1) fail("stages.max_iterations", "must be positive");
  }

  // initial_safe + nominal_state, resolved against the grids
  {
    Grid params(cfg.param_axes), states(cfg.state_axes);
    const json& seeds = require(root, "", "initial_safe");
    if (!seeds.is_array() || seeds.empty())
      fail("initial_safe", "must be a non-empty array");
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      const std::string path = "initial_safe[" + std::to_string(i) + "]";
      const json& e = seeds[i];
      check_keys(e, path, {"param", "state"});
      SeedPairConfig sp;
      sp.param = get_vector(require(e, path, "param"), path + ".param");
      sp.state = get_vector(require(e, path, "state"), path + ".state");
      resolve_grid_point(params, sp.param, path + ".param");
      resolve_grid_point(states, sp.state, path + ".state");
      cfg.initial_safe.push_back(std::move(sp));
    }
    cfg.nominal_state = get_vector(require(root, "", "nominal_state"),
                                   "nominal_state");
    resolve_grid_point(states, cfg.nominal_state, "nominal_state");
  }

  cfg.export_trajectories = get_bool_or(root, "", "export_trajectories", false);
  if (root.contains("confidence_trigger")) {
    const json& c = root.at("confidence_trigger");
    check_keys(c, "confidence_trigger", {"enabled", "threshold"});
    cfg.confidence_trigger_enabled =
        get_bool_or(c, "confidence_trigger", "enabled", false);
    cfg.confidence_threshold =
        get_number_or(c, "confidence_trigger", "threshold", 0.0);
  }

  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  json root;
  root["benchmark"] = cfg.benchmark;
  root["seed"] = cfg.seed;
  root["mode"] = cfg.mode;
  root["output_dir"] = cfg.output_dir;

  auto axes_json = [](const std::vector<Axis>& axes) {
    json arr = json::array();
    for (const Axis& ax : axes)
      arr.push_back(json{{"min", ax.lo}, {"max", ax.hi}, {"count", ax.count}});
    return arr;
  };
  root["grid"] = {{"params", axes_json(cfg.param_axes)},
                  {"states", axes_json(cfg.state_axes)},
                  {"state_bounds", {{"min", cfg.state_lo}, {"max", cfg.state_hi}}},
                  {"mu", cfg.mu}};

  json models = json::array();
  for (const KernelConfig& m : cfg.models)
    models.push_back(json{{"kernel", family_name(m.family)},
                          {"variance", m.variance},
                          {"lengthscales", m.lengthscales}});
  root["gp"] = {{"noise_std", cfg.noise_std}, {"models", models}};

  if (cfg.beta.mode == "constant") {
    root["beta"] = {{"mode", "constant"}, {"value", cfg.beta.value}};
  } else {
    root["beta"] = {{"mode", "theoretical"},
                    {"bound", cfg.beta.bound},
                    {"sigma", cfg.beta.sigma},
                    {"delta", cfg.beta.delta},
                    {"gamma_coeff", cfg.beta.gamma_coeff}};
  }

  root["safety"] = {{"L_a", cfg.L_a},
                    {"L_x", cfg.L_x},
                    {"epsilon", cfg.epsilon},
                    {"eta", cfg.eta}};
  root["stages"] = {{"s1_budget", cfg.s1_budget},
                    {"s2_budget", cfg.s2_budget},
                    {"s3_budget", cfg.s3_budget},
                    {"max_iterations", cfg.max_iterations},
                    {"practical_mode", cfg.practical_mode},
                    {"record_failures_in_gp", cfg.record_failures_in_gp}};
  root["simulation"] = {{"horizon", cfg.horizon},
                        {"dt", cfg.dt},
                        {"monitor_hz", cfg.monitor_hz}};

  json seeds = json::array();
  for (const SeedPairConfig& sp : cfg.initial_safe)
    seeds.push_back(json{{"param", sp.param}, {"state", sp.state}});
  root["initial_safe"] = seeds;
  root["nominal_state"] = cfg.nominal_state;
  root["export_trajectories"] = cfg.export_trajectories;
  root["confidence_trigger"] = {{"enabled", cfg.confidence_trigger_enabled},
                                {"threshold", cfg.confidence_threshold}};
  return root.dump(2) + "\n";
}

std::unique_ptr<SystemModel> build_system(const ExperimentConfig& cfg) {
  if (cfg.benchmark == "poly1d") return std::make_unique<Poly1dSystem>();
  if (cfg.benchmark == "pendulum") return std::make_unique<PendulumSystem>();
  throw ConfigError("benchmark: must be 'poly1d' or 'pendulum'");
}

GridDomain build_domain(const ExperimentConfig& cfg) {
  Eigen::VectorXd lo(cfg.state_lo.size()), hi(cfg.state_hi.size());
  for (std::size_t d = 0; d < cfg.state_lo.size(); ++d) {
    lo[d] = cfg.state_lo[d];
    hi[d] = cfg.state_hi[d];
  }
  return GridDomain(Grid(cfg.param_axes), Grid(cfg.state_axes), lo, hi,
                    cfg.mu);
}

SurrogateModel build_surrogate(const ExperimentConfig& cfg) {
  std::vector<GpModel> models;
  for (const KernelConfig& m : cfg.models) {
    Eigen::VectorXd ls(m.lengthscales.size());
    for (std::size_t d = 0; d < m.lengthscales.size(); ++d)
      ls[d] = m.lengthscales[d];
    models.emplace_back(Kernel(m.family, m.variance, ls), cfg.noise_std);
  }
  return SurrogateModel(std::move(models));
}

BetaSchedule build_beta(const ExperimentConfig& cfg) {
  if (cfg.beta.mode == "constant") return BetaSchedule::constant(cfg.beta.value);
  const double c = cfg.beta.gamma_coeff;
  return BetaSchedule::theoretical(
      cfg.beta.bound, cfg.beta.sigma, cfg.beta.delta,
      [c](long m) { return c * std::log1p(static_cast<double>(m)); },
      static_cast<int>(cfg.models.size()));
}

LipschitzConfig build_lipschitz(const ExperimentConfig& cfg) {
  LipschitzConfig lip;
  lip.L_a = cfg.L_a;
  lip.L_x = cfg.L_x;
  lip.epsilon = cfg.epsilon;
  lip.eta = cfg.eta;
  return lip;
}

RolloutSettings build_rollout_settings(const ExperimentConfig& cfg) {
  RolloutSettings s;
  s.horizon = cfg.horizon;
  s.dt = cfg.dt;
  s.monitor_period = 1.0 / cfg.monitor_hz;
  s.eta = cfg.eta;
  s.use_confidence_trigger = cfg.confidence_trigger_enabled;
  s.confidence_threshold = cfg.confidence_threshold;
  return s;
}

OptimizerSettings build_optimizer_settings(const ExperimentConfig& cfg,
                                           const GridDomain& domain) {
  OptimizerSettings s;
  s.mode = cfg.mode == "safeopt" ? Mode::kSafeOpt : Mode::kGoSafe;
  s.practical_s3 = cfg.practical_mode;
  s.s1_budget = cfg.s1_budget;
  s.s2_budget = cfg.s2_budget;
  s.s3_budget = cfg.s3_budget;
  s.max_iterations = cfg.max_iterations;
  s.record_failures_in_gp = cfg.record_failures_in_gp;
  s.noise_std = cfg.noise_std;
  s.rng_seed = cfg.seed;

  Eigen::VectorXd nominal(cfg.nominal_state.size());
  for (std::size_t d = 0; d < cfg.nominal_state.size(); ++d)
    nominal[d] = cfg.nominal_state[d];
  s.nominal_state = domain.states().nearest(nominal);

  for (const SeedPairConfig& sp : cfg.initial_safe) {
    Eigen::VectorXd pa(sp.param.size()), px(sp.state.size());
    for (std::size_t d = 0; d < sp.param.size(); ++d) pa[d] = sp.param[d];
    for (std::size_t d = 0; d < sp.state.size(); ++d) px[d] = sp.state[d];
    s.seed_pairs.push_back(domain.pair_id(domain.params().nearest(pa),
                                          domain.states().nearest(px)));
  }
  std::sort(s.seed_pairs.begin(), s.seed_pairs.end());
  s.seed_pairs.erase(std::unique(s.seed_pairs.begin(), s.seed_pairs.end()),
                     s.seed_pairs.end());
  return s;
}

}  // namespace gosafe
