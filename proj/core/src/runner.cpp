// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#include "gosafe/runner.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "gosafe/errors.hpp"
#include "gosafe/version.hpp"

namespace gosafe {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json vector_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (long i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

std::string stage_name(Stage s) {
  switch (s) {
    case Stage::kS1:
      return "S1";
    case Stage::kS2:
      return "S2";
    case Stage::kS3:
      return "S3";
    default:
      return "seed";
  }
}

json record_json(const RunRecord& rec) {
  json j;
  j["iteration"] = rec.iteration;
  j["stage"] = stage_name(rec.stage);
  j["pair"] = rec.evaluated_pair;
  j["params"] = vector_json(rec.evaluated_params);
  j["state"] = vector_json(rec.evaluated_state);
  j["safe_outcome"] = rec.safe_outcome;
  j["reward_observed"] = rec.reward_observed;
  j["constraint_observed"] = vector_json(rec.constraint_observed);
  j["safe_set_size"] = rec.safe_set_size;
  j["best_guess_lower"] = rec.best_guess_lower;
  j["hazard"] = rec.hazard;
  j["s1_width"] = rec.s1_width;
  j["s2_width"] = rec.s2_width;
  return j;
}

void write_trajectory_csv(const fs::path& path, const SystemModel& sys,
                          const Trajectory& traj) {
  std::ofstream out(path);
  out << "t";
  for (int d = 0; d < sys.state_dim(); ++d) out << ",x" << d;
  for (int d = 0; d < sys.control_dim(); ++d) out << ",u" << d;
  for (int d = 0; d < sys.constraint_count(); ++d) out << ",g" << d;
  out << "\n";
  for (std::size_t s = 0; s < traj.times.size(); ++s) {
    out << fmt(traj.times[s]);
    for (long d = 0; d < traj.states[s].size(); ++d)
      out << "," << fmt(traj.states[s][d]);
    for (long d = 0; d < traj.controls[s].size(); ++d)
      out << "," << fmt(traj.controls[s][d]);
    for (long d = 0; d < traj.margins[s].size(); ++d)
      out << "," << fmt(traj.margins[s][d]);
    out << "\n";
  }
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg, int verbosity) {
  RunResult result;
  result.config = cfg;
  result.output_dir = cfg.output_dir;

  const fs::path out_dir(cfg.output_dir);
  fs::create_directories(out_dir);
  const fs::path traj_dir = out_dir / "trajectories";
  if (cfg.export_trajectories) fs::create_directories(traj_dir);

  const std::unique_ptr<SystemModel> sys = build_system(cfg);
  const GridDomain domain = build_domain(cfg);
  const LipschitzConfig lip = build_lipschitz(cfg);
  const RolloutSettings rollout = build_rollout_settings(cfg);
  OptimizerSettings opt_settings = build_optimizer_settings(cfg, domain);

  std::ofstream log(out_dir / "run_log.jsonl");
  std::ofstream curve(out_dir / "reward_curve.csv");
  curve << "iteration,reward,safe_set_size,stage\n";
  {
    json header;
    header["config"] = json::parse(serialize_config(cfg));
    header["version"] = kVersion;
    log << header.dump() << "\n";
    log.flush();
  }

  opt_settings.on_evaluation = [&](const RunRecord& rec,
                                   const RolloutRecord& rr) {
    if (rr.hazard < 0.0) ++result.violations;
    if (rec.iteration > 0 && !rec.safe_outcome) ++result.interruptions;
    if (cfg.export_trajectories) {
      char name[48];
      if (rec.iteration > 0)
        std::snprintf(name, sizeof(name), "iter_%04ld.csv", rec.iteration);
      else
        std::snprintf(name, sizeof(name), "seed_%04ld.csv",
                      rec.evaluated_pair);
      write_trajectory_csv(traj_dir / name, *sys, rr.trajectory);
    }
    if (verbosity > 1)
      std::cerr << "eval iter=" << rec.iteration
                << " stage=" << stage_name(rec.stage)
                << " pair=" << rec.evaluated_pair
                << " safe=" << rec.safe_outcome << "\n";
  };

  GoSafeOptimizer opt(*sys, domain, lip, build_surrogate(cfg),
                      build_beta(cfg), rollout, opt_settings);

  try {
    while (!opt.done()) {
      const auto res = opt.step();
      if (res.done) break;
      const RunRecord& rec = res.record;
      log << record_json(rec).dump() << "\n";
      log.flush();
      curve << rec.iteration << "," << fmt(rec.reward_observed) << ","
            << rec.safe_set_size << "," << stage_name(rec.stage) << "\n";
      switch (rec.stage) {
        case Stage::kS1:
          ++result.s1_evals;
          break;
        case Stage::kS2:
          ++result.s2_evals;
          break;
        default:
          ++result.s3_evals;
          break;
      }
      if (verbosity == 1 && rec.iteration % 25 == 0)
        std::cerr << "iter " << rec.iteration << " stage "
                  << stage_name(rec.stage) << " |S|=" << rec.safe_set_size
                  << "\n";
    }
  } catch (...) {
    log.flush();
    curve.flush();
    throw;
  }

  result.iterations = opt.iteration();
  result.done = opt.done();
  result.safe_set_size = opt.safe_state().num_safe();
  result.misspecifications = opt.misspecification_count();
  result.failed_remaining =
      static_cast<long>(opt.safe_state().fail_states.size());

  result.best_pair = opt.best_guess_pair();
  result.best_params = domain.params().point(domain.param_of(result.best_pair));
  result.best_lower = opt.table().lower(result.best_pair, 0);
  {
    // Noiseless evaluation of the recommendation from the nominal state.
    RolloutEngine probe(*sys, domain, rollout);
    const Eigen::VectorXd x0 =
        domain.states().point(opt.settings().nominal_state);
    result.best_true_reward =
        probe.run(result.best_params, x0, false, nullptr, nullptr)
            .observation.reward;
  }

  {
    json sets;
    json safe = json::array(), border = json::array(), failed = json::array();
    for (long p = 0; p < domain.num_pairs(); ++p)
      if (opt.safe_state().safe[p]) safe.push_back(p);
    for (long s = 0; s < domain.num_states(); ++s)
      if (opt.safe_state().border_state[s]) border.push_back(s);
    for (const auto& [pair, xf] : opt.safe_state().fail_states) {
      failed.push_back(json{{"pair", pair}, {"state", vector_json(xf)}});
    }
    sets["safe_pairs"] = safe;
    sets["border_states"] = border;
    sets["failed"] = failed;
    std::ofstream(out_dir / "safe_set.json") << sets.dump(2) << "\n";
  }

  {
    json summary;
    summary["benchmark"] = cfg.benchmark;
    summary["mode"] = cfg.mode;
    summary["seed"] = cfg.seed;
    summary["version"] = kVersion;
    summary["iterations"] = result.iterations;
    summary["done"] = result.done;
    summary["best_guess"] = {{"pair", result.best_pair},
                             {"params", vector_json(result.best_params)},
                             {"reward_lower", result.best_lower},
                             {"true_reward", result.best_true_reward}};
    summary["safe_set_size"] = result.safe_set_size;
    summary["violations"] = result.violations;
    summary["interruptions"] = result.interruptions;
    summary["failed_remaining"] = result.failed_remaining;
    summary["misspecifications"] = result.misspecifications;
    summary["stage_evaluations"] = {{"s1", result.s1_evals},
                                    {"s2", result.s2_evals},
                                    {"s3", result.s3_evals}};
    std::ofstream(out_dir / "summary.json") << summary.dump(2) << "\n";
  }

  if (verbosity > 0)
    std::cerr << "done: " << result.iterations << " iterations, best "
              << fmt(result.best_true_reward) << "\n";
  return result;
}

std::vector<RunResult> compare_modes(const ExperimentConfig& cfg,
                                     const std::vector<std::string>& modes,
                                     int verbosity) {
  if (modes.size() < 2)
    throw ConfigError("compare: need at least two modes");
  std::vector<RunResult> results;
  for (const std::string& mode : modes) {
    if (mode != "gosafe" && mode != "safeopt")
      throw ConfigError("compare: unknown mode '" + mode + "'");
    ExperimentConfig sub = cfg;
    sub.mode = mode;
    sub.output_dir =
        (fs::path(cfg.output_dir) / mode).string();
    results.push_back(run_experiment(sub, verbosity));
  }
  fs::create_directories(cfg.output_dir);
  std::ofstream out(fs::path(cfg.output_dir) / "compare.csv");
  out << "mode,best_guess_reward,iterations,interruptions,violations\n";
  for (std::size_t i = 0; i < modes.size(); ++i) {
    out << modes[i] << "," << fmt(results[i].best_true_reward) << ","
        << results[i].iterations << "," << results[i].interruptions << ","
        << results[i].violations << "\n";
  }
  return results;
}

}  // namespace gosafe
