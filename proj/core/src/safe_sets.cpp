// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#include "gosafe/safe_sets.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "gosafe/errors.hpp"

namespace gosafe {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

SafeState::SafeState(const GridDomain& domain)
    : safe(domain.num_pairs(), 0),
      failed(domain.num_pairs(), 0),
      safe_params_per_state(domain.num_states(), 0),
      border_state(domain.num_states(), 0) {}

long SafeState::num_safe() const {
  return std::count(safe.begin(), safe.end(), char(1));
}

void SafeState::mark_safe(long pair, const GridDomain& domain) {
  if (!safe[pair]) {
    safe[pair] = 1;
    ++safe_params_per_state[domain.state_of(pair)];
  }
}

void SafeState::mark_failed(long pair, const Eigen::VectorXd& x_fail) {
  failed[pair] = 1;
  fail_states[pair] = x_fail;
}

void SafeState::clear_failed(long pair) {
  failed[pair] = 0;
  fail_states.erase(pair);
}

long expand_safe_set(SafeState& st, const ConfidenceTable& table,
                     const LipschitzConfig& cfg, const GridDomain& domain) {
  const long na = domain.num_params();
  const long nx = domain.num_states();
  const int indices = table.num_indices();
  if (indices < 2) throw std::invalid_argument("no constraint indices");
  const Eigen::MatrixXd& da = domain.param_dist();
  const Eigen::MatrixXd& dx = domain.state_dist();
  const double mu = domain.mu();

  std::vector<char> certified(domain.num_pairs(), 1);
  Eigen::MatrixXd m1(na, nx);
  for (int i = 1; i < indices; ++i) {
    // m1(at, xw): best witness margin at state xw after paying the parameter
    // move aw -> at.
    m1.setConstant(-kInf);
    for (long aw = 0; aw < na; ++aw) {
      for (long xw = 0; xw < nx; ++xw) {
        if (!st.safe[aw * nx + xw]) continue;
        const double l = table.lower(aw * nx + xw, i);
        for (long at = 0; at < na; ++at) {
          const double v = l - cfg.L_a * da(aw, at);
          if (v > m1(at, xw)) m1(at, xw) = v;
        }
      }
    }
    for (long at = 0; at < na; ++at) {
      for (long xt = 0; xt < nx; ++xt) {
        const long pair = at * nx + xt;
        if (st.safe[pair] || !certified[pair]) continue;
        double best = -kInf;
        for (long xw = 0; xw < nx; ++xw) {
          const double v = m1(at, xw) - cfg.L_x * (dx(xw, xt) + mu);
          if (v > best) best = v;
        }
        if (!(best >= 0.0)) certified[pair] = 0;
      }
    }
  }

  long added = 0;
  for (long pair = 0; pair < domain.num_pairs(); ++pair) {
    if (st.safe[pair] || !certified[pair]) continue;
    st.mark_safe(pair, domain);
    ++added;
  }
  return added;
}

void recompute_border(SafeState& st, const GridDomain& domain,
                      const Grid::Stencil& stencil) {
  const long nx = domain.num_states();
  for (long x = 0; x < nx; ++x) {
    char border = 0;
    if (st.safe_params_per_state[x] > 0) {
      if (stencil.touches_outside[x]) {
        border = 1;
      } else {
        for (long nb : stencil.in_grid[x]) {
          if (st.safe_params_per_state[nb] == 0) {
            border = 1;
            break;
          }
        }
      }
    }
    st.border_state[x] = border;
  }
}

std::vector<char> compute_expanders(const SafeState& st,
                                    const ConfidenceTable& table,
                                    const LipschitzConfig& cfg,
                                    const GridDomain& domain) {
  const long na = domain.num_params();
  const long nx = domain.num_states();
  const int indices = table.num_indices();
  const Eigen::MatrixXd& da = domain.param_dist();
  const Eigen::MatrixXd& dx = domain.state_dist();
  const double mu = domain.mu();

  // m1min(wa, xt): cheapest parameter move from wa onto a non-safe pair at
  // state xt.
  Eigen::MatrixXd m1min = Eigen::MatrixXd::Constant(na, nx, kInf);
  for (long ta = 0; ta < na; ++ta) {
    for (long xt = 0; xt < nx; ++xt) {
      if (st.safe[ta * nx + xt]) continue;
      for (long wa = 0; wa < na; ++wa) {
        const double v = cfg.L_a * da(wa, ta);
        if (v < m1min(wa, xt)) m1min(wa, xt) = v;
      }
    }
  }

  std::vector<char> mask(domain.num_pairs(), 0);
  for (long pair = 0; pair < domain.num_pairs(); ++pair) {
    if (!st.safe[pair]) continue;
    const long wa = domain.param_of(pair);
    const long wx = domain.state_of(pair);
    double max_u = -kInf;
    for (int i = 1; i < indices; ++i)
      max_u = std::max(max_u, table.upper(pair, i));
    double min_slack = kInf;
    for (long xt = 0; xt < nx; ++xt) {
      const double v = m1min(wa, xt) + cfg.L_x * (dx(wx, xt) + mu);
      if (v < min_slack) min_slack = v;
    }
    if (max_u - min_slack >= 0.0) mask[pair] = 1;
  }
  return mask;
}

std::vector<long> expander_counts(const SafeState& st,
                                  const ConfidenceTable& table,
                                  const LipschitzConfig& cfg,
                                  const GridDomain& domain) {
  const long pairs = domain.num_pairs();
  const int indices = table.num_indices();
  std::vector<long> outside;
  for (long t = 0; t < pairs; ++t)
    if (!st.safe[t]) outside.push_back(t);

  std::vector<long> counts(pairs, 0);
  for (long w = 0; w < pairs; ++w) {
    if (!st.safe[w]) continue;
    long e = 0;
    for (long t : outside) {
      const double slack = domain.lipschitz_slack(cfg, w, t);
      for (int i = 1; i < indices; ++i) {
        if (table.upper(w, i) - slack >= 0.0) {
          ++e;
          break;
        }
      }
    }
    counts[w] = e;
  }
  return counts;
}

std::vector<char> compute_maximizers(const SafeState& st,
                                     const ConfidenceTable& table,
                                     long nominal_state,
                                     const GridDomain& domain) {
  const long nx = domain.num_states();
  double best_l = -kInf;
  bool any = false;
  for (long a = 0; a < domain.num_params(); ++a) {
    const long pair = a * nx + nominal_state;
    if (!st.safe[pair]) continue;
    any = true;
    best_l = std::max(best_l, table.lower(pair, 0));
  }
  std::vector<char> mask(domain.num_pairs(), 0);
  if (!any) return mask;
  for (long a = 0; a < domain.num_params(); ++a) {
    const long pair = a * nx + nominal_state;
    if (st.safe[pair] && table.upper(pair, 0) >= best_l) mask[pair] = 1;
  }
  return mask;
}

long best_guess(const SafeState& st, const ConfidenceTable& table,
                long nominal_state, const GridDomain& domain) {
  const long nx = domain.num_states();
  long best = -1;
  double best_l = -kInf;
  for (long a = 0; a < domain.num_params(); ++a) {
    const long pair = a * nx + nominal_state;
    if (!st.safe[pair]) continue;
    if (best < 0 || table.lower(pair, 0) > best_l) {
      best = pair;
      best_l = table.lower(pair, 0);
    }
  }
  if (best < 0)
    throw SeedError("no safe policy at the nominal initial condition");
  return best;
}

}  // namespace gosafe
