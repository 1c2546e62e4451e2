// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <map>
#include <vector>

#include "gosafe/confidence.hpp"
#include "gosafe/grid.hpp"

namespace gosafe {

// Index 0 of a ConfidenceTable is the reward; indices 1.. are the safety
// constraints. Set operations below follow that convention.

// Mutable set state for one optimization run: which (param, state) pairs are
// currently known safe, which experiments were interrupted, and the border
// of the state projection.
struct SafeState {
  explicit SafeState(const GridDomain& domain);

  std::vector<char> safe;    // per pair id
  std::vector<char> failed;  // per pair id, still awaiting a revisit
  std::map<long, Eigen::VectorXd> fail_states;  // pair id -> state at switch
  std::vector<int> safe_params_per_state;       // per state id
  std::vector<char> border_state;               // per state id

  long num_safe() const;
  bool state_has_safe_param(long x_flat) const {
    return safe_params_per_state[x_flat] > 0;
  }
  void mark_safe(long pair, const GridDomain& domain);
  void mark_failed(long pair, const Eigen::VectorXd& x_fail);
  void clear_failed(long pair);
};

// One application of the Lipschitz expansion operator: a pair joins the set
// when for every constraint index some already-safe witness certifies it,
// margin (l_w - L_a·d_a) - L_x·(d_x + mu) >= 0. The factored sweep below is
// exact for that expression, not just up to rounding. Returns the number of
// pairs added.
long expand_safe_set(SafeState& st, const ConfidenceTable& table,
                     const LipschitzConfig& cfg, const GridDomain& domain);

// Recomputes st.border_state: states that hold at least one safe parameter
// and either touch the grid boundary through the stencil or have a stencil
// neighbor with no safe parameter.
void recompute_border(SafeState& st, const GridDomain& domain,
                      const Grid::Stencil& stencil);

// Mask over pair ids: safe pairs whose upper constraint bounds could certify
// at least one pair outside the current set.
std::vector<char> compute_expanders(const SafeState& st,
                                    const ConfidenceTable& table,
                                    const LipschitzConfig& cfg,
                                    const GridDomain& domain);

// Exact per-pair count of outside pairs an optimistic certificate reaches.
// Quadratic in the grid; diagnostics and cross-checks only.
std::vector<long> expander_counts(const SafeState& st,
                                  const ConfidenceTable& table,
                                  const LipschitzConfig& cfg,
                                  const GridDomain& domain);

// Mask over pair ids: safe pairs at the nominal state whose reward upper
// bound reaches the best reward lower bound on that slice.
std::vector<char> compute_maximizers(const SafeState& st,
                                     const ConfidenceTable& table,
                                     long nominal_state,
                                     const GridDomain& domain);

// Pair id maximizing the reward lower bound over safe pairs at the nominal
// state, smallest id on ties. Throws SeedError when the slice is empty.
long best_guess(const SafeState& st, const ConfidenceTable& table,
                long nominal_state, const GridDomain& domain);

}  // namespace gosafe
