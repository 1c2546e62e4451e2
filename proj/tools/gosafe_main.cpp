// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gosafe/config.hpp"
#include "gosafe/errors.hpp"
#include "gosafe/runner.hpp"
#include "gosafe/version.hpp"

#ifdef GOSAFE_HAVE_ORACLE
#include "gosafe/reachability.hpp"
#endif

namespace {

int verbosity_from_env() {
  const char* v = std::getenv("GOSAFE_VERBOSITY");
  if (v == nullptr) return 0;
  try {
    return std::stoi(v);
  } catch (...) {
    return 0;
  }
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void print_result(const gosafe::RunResult& r) {
  std::cout << "mode=" << r.config.mode << " iterations=" << r.iterations
            << " done=" << (r.done ? 1 : 0)
            << " safe_set_size=" << r.safe_set_size
            << " interruptions=" << r.interruptions
            << " violations=" << r.violations << "\n";
  std::cout << "best_guess params=[";
  for (long d = 0; d < r.best_params.size(); ++d) {
    if (d > 0) std::cout << ", ";
    std::cout << r.best_params[d];
  }
  std::cout << "] reward_lower=" << r.best_lower
            << " true_reward=" << r.best_true_reward << "\n";
  std::cout << "outputs: " << r.output_dir << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gosafe: safe policy search on simulated benchmarks"};
  app.set_version_flag("--version", std::string(gosafe::kVersion));
  app.require_subcommand(1);

  std::string config_path, out_dir, mode, modes_arg = "gosafe,safeopt";
  long long seed_override = -1;

  CLI::App* run = app.add_subcommand("run", "run one experiment");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--seed", seed_override, "override the config seed");
  run->add_option("--mode", mode, "override the mode (gosafe|safeopt)");
  run->add_option("--out", out_dir, "override the output directory");

  CLI::App* compare =
      app.add_subcommand("compare", "run several modes with a shared seed");
  compare->add_option("--config", config_path, "config file")->required();
  compare->add_option("--modes", modes_arg, "comma-separated mode list");
  compare->add_option("--seed", seed_override, "override the config seed");
  compare->add_option("--out", out_dir, "override the output directory");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "closure and exact optimum for test-size grids");
  oracle->add_option("--config", config_path, "config file")->required();

  CLI11_PARSE(app, argc, argv);
  const int verbosity = verbosity_from_env();

  try {
    gosafe::ExperimentConfig cfg = gosafe::load_config_file(config_path);
    if (seed_override >= 0)
      cfg.seed = static_cast<unsigned long long>(seed_override);
    if (!mode.empty()) {
      if (mode != "gosafe" && mode != "safeopt")
        throw gosafe::ConfigError("--mode: must be 'gosafe' or 'safeopt'");
      cfg.mode = mode;
    }
    if (!out_dir.empty()) cfg.output_dir = out_dir;

    if (run->parsed()) {
      print_result(gosafe::run_experiment(cfg, verbosity));
    } else if (compare->parsed()) {
      const auto results =
          gosafe::compare_modes(cfg, split_csv(modes_arg), verbosity);
      for (const auto& r : results) print_result(r);
    } else if (oracle->parsed()) {
#ifdef GOSAFE_HAVE_ORACLE
      const auto sys = gosafe::build_system(cfg);
      const gosafe::GridDomain domain = gosafe::build_domain(cfg);
      const gosafe::LipschitzConfig lip = gosafe::build_lipschitz(cfg);
      const gosafe::OptimizerSettings opt =
          gosafe::build_optimizer_settings(cfg, domain);
      const gosafe::GroundTruth truth =
          gosafe::make_ground_truth(*sys, gosafe::build_rollout_settings(cfg));
      std::vector<char> s0(domain.num_pairs(), 0);
      for (long p : opt.seed_pairs) s0[p] = 1;
      const std::vector<char> closed =
          gosafe::closure(s0, truth, lip, domain);
      long count = 0;
      for (char c : closed) count += c;
      const auto [pair, value] =
          gosafe::oracle_optimum(truth, domain, opt.nominal_state, closed);
      const Eigen::VectorXd a =
          domain.params().point(domain.param_of(pair));
      std::cout << "closure_size=" << count << "/" << domain.num_pairs()
                << "\n";
      std::cout << "optimum params=[";
      for (long d = 0; d < a.size(); ++d) {
        if (d > 0) std::cout << ", ";
        std::cout << a[d];
      }
      std::cout << "] reward=" << value << "\n";
#else
      std::cerr << "oracle support was disabled at build time\n";
      return 1;
#endif
    }
  } catch (const gosafe::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const gosafe::NumericsError& e) {
    std::cerr << "numerics error: " << e.what() << "\n";
    return 3;
  } catch (const gosafe::SeedError& e) {
    std::cerr << "seed error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
