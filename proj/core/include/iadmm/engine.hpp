// Copyright 2026 The iadmm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "iadmm/block_vector.hpp"
#include "iadmm/config.hpp"
#include "iadmm/problem.hpp"

namespace iadmm {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Per-block quantities of one block update.
struct BlockCoefficients {
  double lipschitz = kNaN;  // l_i^k, L_i^k + beta l_i^k or L_i^k depending on the rule
  double kappa = kNaN;
  double alpha = 0.0;
  double a = 0.0;  // bound on the inertial term: ||G_i^k|| <= a ||dx_i^k||
  double gamma = 0.0;
  double eta = kNaN;
  bool exact_kappa = false;
};

/// (x, y, omega) plus what extrapolation and the Lyapunov value need.
struct IterateState {
  BlockVector x;
  BlockVector x_prev;
  Vector y;
  Vector y_prev;
  Vector omega;
  Vector omega_prev;
  long k = 0;
  double t_prev = 1.0;  // t_{k-1}
  double t_cur = 1.0;   // t_k
  /// Coefficients of the update that produced the current x (index k-1).
  std::vector<BlockCoefficients> coeff;
  /// f_i subgradient at x_i from the prox identity of that update.
  std::vector<Vector> f_subgradient;
};

/// Initial point; y and omega default to a feasible y (or zero) and zero.
struct InitialPoint {
  BlockVector x;
  std::optional<Vector> y;
  std::optional<Vector> omega;
};

/// Least-squares y solving h(x) + By = 0 when that is exact and B^T B is
/// invertible; the zero vector otherwise.
Vector default_initial_y(const Problem& p, const BlockVector& x);

IterateState make_initial_state(const Problem& p, const InitialPoint& init);

/// Bundles what every step needs.
struct SolverContext {
  const Problem& problem;
  const SolverConfig& config;
  DerivedConstants constants;
};

/// Output of one block update. Does not modify the state.
struct BlockUpdate {
  Vector x_new;
  Vector f_subgradient;
  BlockCoefficients coeff;
  /// First-order residual of the block subproblem at x_new, in units of x.
  double optimality_residual = 0.0;
};

/// alpha_i^k for block i given the current state.
double extrapolation_weight(std::size_t i, const IterateState& state, const SolverContext& ctx);

/// Solves the block-i subproblem at x^{k,i-1} = state.x (blocks < i already updated).
BlockUpdate update_block(std::size_t i, const IterateState& state, const SolverContext& ctx);

struct YUpdate {
  Vector y_new;
  /// Residual of B^T(omega + beta(h + B y+)) + grad G(y) + L_G (y+ - y), relative.
  double optimality_residual = 0.0;
};

/// y+ = (beta B^T B + L_G I)^{-1} (L_G y - grad G(y) - B^T(omega + beta h(x))), with state.x
/// already holding x^{k+1}.
YUpdate update_y(const IterateState& state, const SolverContext& ctx);
YUpdate update_y(const IterateState& state, const SolverContext& ctx, const Vector& h_new);

/// omega+ = tau1 omega + tau2 beta (h(x) + B y).
Vector update_multiplier(const Vector& omega, const Vector& residual, const SolverConfig& cfg);

/// Lyapunov value at state.k >= 1:
///   L_beta - (1 - tau1)/(2 tau2 beta)||omega||^2 + sum_i B1 eta_i^{k-1}||dx_i||^2
///   + C1 ||B^T d omega||^2 + B2 C3 ||dy||^2.
double lyapunov_value(const IterateState& state, const SolverContext& ctx);

/// One row of a run trace.
struct TraceRecord {
  long k = 0;
  double wall_time_s = 0.0;
  double objective = kNaN;
  double aug_lagrangian = kNaN;
  double lyapunov = kNaN;
  double feas = kNaN;
  double stat_x_max = kNaN;
  double stat_y = kNaN;
  double dx = 0.0;
  double dy = 0.0;
  double domega = 0.0;
  std::vector<double> alpha;
  std::vector<double> eta;
  std::vector<double> gamma;

  // Not part of the CSV schema; NaN when unknown (e.g. loaded from disk).
  double omega_norm = kNaN;
  double criticality = kNaN;
  double multiplier_residual = kNaN;
  double y_optimality_residual = kNaN;
  double block_optimality_residual = kNaN;
  double nsdp_violation = kNaN;  // max over blocks, relative to 1 + |L_beta|
  double lagr_before_y = kNaN;   // L_beta(x^{k+1}, y^k, omega^k)
  double lagr_after_y = kNaN;    // L_beta(x^{k+1}, y^{k+1}, omega^k)
  double y_decrease_margin = kNaN;  // (delta/2)||dy||^2
};

enum class StopReason { kIterationBudget, kTimeBudget, kConverged };

struct RunResult {
  std::vector<TraceRecord> trace;
  IterateState final_state;
  DerivedConstants constants;
  StopReason reason = StopReason::kIterationBudget;
  bool converged = false;
};

/// Runs the method from `init` until a budget is exhausted or the
/// criticality measure falls to cfg.tolerance. Validates cfg first.
///
/// The criticality measure is the max of ||chi_i + grad_{x_i}h^T(omega + beta r)||,
/// ||grad G + B^T(omega + beta r)|| and ||d omega|| / (tau2 beta), where r is the
/// constraint residual. For tau1 = 1 the last term equals ||r||.
RunResult run(const Problem& p, const SolverConfig& cfg, const InitialPoint& init);

}  // namespace iadmm
