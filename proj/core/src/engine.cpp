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

#include "iadmm/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "iadmm/errors.hpp"
#include "iadmm/evaluate.hpp"
#include "iadmm/extrapolation.hpp"

namespace iadmm {

namespace {

constexpr double kBlockResidualTol = 1e-8;
constexpr double kYResidualTol = 1e-9;
constexpr double kMultiplierResidualTol = 1e-10;

BlockVector with_block(const BlockVector& x, std::size_t i, const Vector& z) {
  BlockVector out = x;
  out.block(i) = z;
  return out;
}

bool exact_kappa_allowed(UpdateRule rule, const BlockStructure& s) {
  if (rule == UpdateRule::kLinearizedPenalty) return s.h_affine && s.f_convex;
  return s.h_affine && s.f_convex && s.F_convex;
}

// The NSDP coefficients of the linearized-penalty rule carry a factor beta
// because its proximal term is (beta kappa / 2)||.||^2; the other two rules
// put kappa on the proximal term directly.
double rule_scale(UpdateRule rule, double beta) {
  return rule == UpdateRule::kLinearizedPenalty ? beta : 1.0;
}

struct BlockConstants {
  UpdateRule rule;
  BlockStructure structure;
  double lipschitz;
  double kappa;
  bool exact;
};

BlockConstants block_constants(std::size_t i, const BlockVector& x, const SolverContext& ctx) {
  const Problem& p = ctx.problem;
  const SolverConfig& cfg = ctx.config;
  BlockConstants bc{};
  bc.rule = cfg.rule_for(i);
  bc.structure = p.block_structure(i);
  switch (bc.rule) {
    case UpdateRule::kLinearizedPenalty:
      bc.lipschitz = p.block_lipschitz(i, x, LipschitzKind::kHSquared, cfg.beta);
      break;
    case UpdateRule::kLinearizedSmooth:
      bc.lipschitz = p.block_lipschitz(i, x, LipschitzKind::kCombined, cfg.beta);
      break;
    case UpdateRule::kExactPenalty:
      bc.lipschitz = p.block_lipschitz(i, x, LipschitzKind::kF, cfg.beta);
      break;
  }
  const KappaRule kr = cfg.kappa_for(i);
  const bool allowed = exact_kappa_allowed(bc.rule, bc.structure);
  switch (kr.mode) {
    case KappaRule::Mode::kAuto:
      bc.exact = allowed;
      bc.kappa = allowed ? bc.lipschitz : cfg.default_kappa_factor * bc.lipschitz;
      break;
    case KappaRule::Mode::kExact:
      if (!allowed) {
        throw ConfigError("block " + std::to_string(i) + ": kappa = l needs a convex block");
      }
      bc.exact = true;
      bc.kappa = bc.lipschitz;
      break;
    case KappaRule::Mode::kInflated:
      bc.exact = false;
      bc.kappa = kr.factor * bc.lipschitz;
      break;
  }
  return bc;
}

double alpha_for(std::size_t i, const IterateState& state, const SolverContext& ctx,
                 const BlockConstants& bc) {
  if (ctx.config.extrapolation == Extrapolation::kNone || state.k == 0) return 0.0;
  const BlockCoefficients& prev = state.coeff.at(i);
  ExtrapolationInputs in;
  in.t_prev = state.t_prev;
  in.t_cur = state.t_cur;
  in.lipschitz_prev = prev.lipschitz;
  in.lipschitz_cur = bc.lipschitz;
  in.kappa_prev = prev.kappa;
  in.kappa_cur = bc.kappa;
  in.exact_kappa = bc.exact && prev.exact_kappa;
  in.nu = ctx.config.nu_for(i);
  in.B1 = ctx.config.B1;
  return extrapolation_weight(ctx.config.extrapolation, in);
}

BlockCoefficients nsdp_coefficients(const BlockConstants& bc, double alpha, double nu,
                                    double beta) {
  BlockCoefficients c;
  c.lipschitz = bc.lipschitz;
  c.kappa = bc.kappa;
  c.alpha = alpha;
  c.exact_kappa = bc.exact;
  const double s = rule_scale(bc.rule, beta);
  c.a = s * (bc.lipschitz + bc.kappa) * alpha;
  if (bc.exact) {
    c.gamma = 0.5 * s * bc.lipschitz * alpha * alpha;
    c.eta = 0.5 * s * bc.lipschitz;
  } else {
    const double gap = bc.kappa - bc.lipschitz;
    c.eta = 0.5 * (1.0 - nu) * gap * s;
    c.gamma = c.a == 0.0 ? 0.0 : c.a * c.a / (2.0 * nu * gap * s);
  }
  return c;
}

}  // namespace

Vector default_initial_y(const Problem& p, const BlockVector& x) {
  const CouplingOperator& B = p.B();
  Vector y = Vector::Zero(p.y_dim());
  if (!(B.lambda_min_BtB() > 0.0)) return y;
  const Vector hx = p.h(x);
  Vector candidate = B.solve_normal(1.0, 0.0, -B.apply_transpose(hx));
  const double resid = (hx + B.apply(candidate)).norm();
  if (resid <= 1e-10 * (1.0 + hx.norm())) y = std::move(candidate);
  return y;
}

IterateState make_initial_state(const Problem& p, const InitialPoint& init) {
  IterateState s;
  s.x = init.x;
  s.x.check_shape(p.block_dims());
  s.x_prev = s.x;
  s.y = init.y ? *init.y : default_initial_y(p, s.x);
  s.y_prev = s.y;
  s.omega = init.omega ? *init.omega : Vector::Zero(p.coupling_dim());
  s.omega_prev = s.omega;
  check_shapes(p, s.x, s.y, s.omega);
  s.coeff.assign(s.x.num_blocks(), BlockCoefficients{});
  s.f_subgradient.clear();
  for (std::size_t i = 0; i < s.x.num_blocks(); ++i) {
    s.f_subgradient.push_back(Vector::Zero(s.x.block(i).size()));
  }
  return s;
}

double extrapolation_weight(std::size_t i, const IterateState& state, const SolverContext& ctx) {
  return alpha_for(i, state, ctx, block_constants(i, state.x, ctx));
}

BlockUpdate update_block(std::size_t i, const IterateState& state, const SolverContext& ctx) {
  const Problem& p = ctx.problem;
  const SolverConfig& cfg = ctx.config;
  const double beta = cfg.beta;
  const bool check = cfg.check_level != CheckLevel::kOff;

  const BlockVector& x = state.x;
  const Vector& xi = x.block(i);
  const BlockConstants bc = block_constants(i, x, ctx);
  const double alpha = alpha_for(i, state, ctx, bc);

  const Vector xbar = xi + alpha * (xi - state.x_prev.block(i));
  const BlockVector xbar_full = with_block(x, i, xbar);
  const Vector v = state.omega + beta * p.B().apply(state.y);

  BlockUpdate out;
  out.coeff = nsdp_coefficients(bc, alpha, cfg.nu_for(i), beta);

  // Quadratic weight and the part of the subproblem's linear term that does
  // not involve <h(z, x_rest), v>.
  double weight = 0.0;
  Vector lin_center;  // weight * center before the coupling term
  Vector hbar;
  if (bc.rule != UpdateRule::kExactPenalty) hbar = p.h(xbar_full);

  switch (bc.rule) {
    case UpdateRule::kLinearizedPenalty: {
      const double LF = p.lipschitz_F_block(i, x);
      weight = LF + beta * bc.kappa;
      lin_center = LF * xi + beta * bc.kappa * xbar - p.grad_F_block(i, x);
      break;
    }
    case UpdateRule::kLinearizedSmooth:
    case UpdateRule::kExactPenalty:
      weight = bc.kappa;
      lin_center = bc.kappa * xbar - p.grad_F_block(i, xbar_full);
      break;
  }
  if (!(weight > 0.0)) {
    throw ConfigError("block " + std::to_string(i) +
                      ": proximal weight is not positive (zero Lipschitz constant?)");
  }

  const bool prox_route = bc.rule != UpdateRule::kExactPenalty && bc.structure.h_affine;
  if (prox_route) {
    // h is affine in block i, so its block Jacobian does not depend on x_i and
    // <h(z), v> + beta <J^T h(xbar), z> collapse into one linear term.
    const Vector coupling = p.jac_h_block_transpose(i, xbar_full, v + beta * hbar);
    const Vector center = (lin_center - coupling) / weight;
    out.x_new = p.prox_f(i, center, weight);
    out.f_subgradient = weight * (center - out.x_new);
    if (check) {
      // Rebuild the subproblem gradient term by term.
      Vector grad = p.jac_h_block_transpose(i, x, v) +
                    beta * p.jac_h_block_transpose(i, xbar_full, hbar);
      if (bc.rule == UpdateRule::kLinearizedPenalty) {
        const double LF = weight - beta * bc.kappa;
        grad += p.grad_F_block(i, x) + LF * (out.x_new - xi) + beta * bc.kappa * (out.x_new - xbar);
      } else {
        grad += p.grad_F_block(i, xbar_full) + bc.kappa * (out.x_new - xbar);
      }
      if (!bc.structure.f_zero) grad += out.f_subgradient;
      out.optimality_residual = grad.norm() / weight;
    }
  } else {
    double penalty = 0.0;
    if (bc.rule == UpdateRule::kExactPenalty) {
      penalty = beta;
    } else {
      lin_center -= beta * p.jac_h_block_transpose(i, xbar_full, hbar);
    }
    const Vector center = lin_center / weight;
    out.x_new = p.coupled_prox(i, x, v, penalty, center, weight);
    const BlockVector x_new_full = with_block(x, i, out.x_new);
    Vector smooth_grad = weight * (out.x_new - center);
    if (penalty > 0.0) {
      smooth_grad += p.jac_h_block_transpose(i, x_new_full, v + penalty * p.h(x_new_full));
    } else {
      smooth_grad += p.jac_h_block_transpose(i, x_new_full, v);
    }
    out.f_subgradient = -smooth_grad;
    if (check) {
      if (bc.structure.f_zero) {
        out.optimality_residual = smooth_grad.norm() / weight;
      } else {
        const Vector fixed = p.prox_f(i, out.x_new - smooth_grad / weight, weight);
        out.optimality_residual = (out.x_new - fixed).norm();
      }
    }
  }
  if (!out.x_new.allFinite()) {
    throw NumericError("block " + std::to_string(i) + " update produced non-finite values");
  }
  return out;
}

namespace {

YUpdate update_y_impl(const IterateState& state, const SolverContext& ctx, const Vector& h_new,
                      const Vector& gG) {
  const Problem& p = ctx.problem;
  const CouplingOperator& B = p.B();
  const double beta = ctx.config.beta;
  const double LG = p.lipschitz_G();
  const Vector rhs = LG * state.y - gG - B.apply_transpose(state.omega + beta * h_new);
  YUpdate out;
  out.y_new = B.solve_normal(beta, LG, rhs);
  if (!out.y_new.allFinite()) throw NumericError("y update produced non-finite values");
  if (ctx.config.check_level != CheckLevel::kOff) {
    const Vector By = B.apply(out.y_new);
    const Vector res = B.apply_transpose(state.omega + beta * (h_new + By)) + gG +
                       LG * (out.y_new - state.y);
    const double scale = 1.0 + B.apply_transpose(state.omega).norm() +
                         beta * B.apply_transpose(h_new).norm() +
                         beta * B.apply_transpose(By).norm() + gG.norm() +
                         LG * (out.y_new.norm() + state.y.norm());
    out.optimality_residual = res.norm() / scale;
  }
  return out;
}

}  // namespace

YUpdate update_y(const IterateState& state, const SolverContext& ctx, const Vector& h_new) {
  return update_y_impl(state, ctx, h_new, ctx.problem.grad_G(state.y));
}

YUpdate update_y(const IterateState& state, const SolverContext& ctx) {
  return update_y(state, ctx, ctx.problem.h(state.x));
}

Vector update_multiplier(const Vector& omega, const Vector& residual, const SolverConfig& cfg) {
  if (omega.size() != residual.size()) throw DimensionError("omega / residual length mismatch");
  return cfg.tau1 * omega + (cfg.tau2 * cfg.beta) * residual;
}

namespace {

double lyapunov_from(double lagrangian, const IterateState& state, const SolverContext& ctx) {
  const SolverConfig& cfg = ctx.config;
  const DerivedConstants& c = ctx.constants;
  double value = lagrangian - (1.0 - cfg.tau1) / (2.0 * cfg.tau2 * cfg.beta) *
                                  state.omega.squaredNorm();
  for (std::size_t i = 0; i < state.x.num_blocks(); ++i) {
    value += cfg.B1 * state.coeff[i].eta *
             (state.x.block(i) - state.x_prev.block(i)).squaredNorm();
  }
  if (c.C1 != 0.0) {
    value += c.C1 * ctx.problem.B().apply_transpose(state.omega - state.omega_prev).squaredNorm();
  }
  value += cfg.B2 * c.C3 * (state.y - state.y_prev).squaredNorm();
  return value;
}

double relative_gap(double lhs, double rhs, double scale) {
  return (lhs - rhs) / (1.0 + std::abs(scale));
}

}  // namespace

double lyapunov_value(const IterateState& state, const SolverContext& ctx) {
  if (state.k < 1) throw StateError("Lyapunov value needs k >= 1");
  const double L =
      eval_aug_lagrangian(ctx.problem, state.x, state.y, state.omega, ctx.config.beta);
  return lyapunov_from(L, state, ctx);
}

namespace {

// L_beta from its pieces; +infinity propagates from f.
double lagrangian_from(const Problem& p, const BlockVector& x, double G_value, const Vector& omega,
                       double beta, const Vector& residual) {
  double theta = p.F(x) + G_value;
  for (std::size_t i = 0; i < x.num_blocks(); ++i) {
    const double fi = p.f(i, x.block(i));
    if (fi == std::numeric_limits<double>::infinity()) return fi;
    theta += fi;
  }
  return theta + residual.dot(omega) + 0.5 * beta * residual.squaredNorm();
}

// Fills feas, stat_x_max, stat_y, omega_norm and (when a tolerance is set) criticality.
// gG is grad G(state.y).
void fill_residuals(TraceRecord& rec, const IterateState& state, const SolverContext& ctx,
                    const Vector& residual, const Vector& gG, bool with_subgradient) {
  const Problem& p = ctx.problem;
  const SolverConfig& cfg = ctx.config;
  const bool want_criticality = cfg.tolerance > 0.0;
  double stat_x_max = 0.0;
  double crit = 0.0;
  for (std::size_t i = 0; i < state.x.num_blocks(); ++i) {
    if (!with_subgradient && !p.block_structure(i).f_zero) {
      stat_x_max = kNaN;
      crit = kNaN;
      break;
    }
    const Vector chi = state.f_subgradient[i] + p.grad_F_block(i, state.x);
    const Vector s = chi + p.jac_h_block_transpose(i, state.x, state.omega);
    stat_x_max = std::max(stat_x_max, s.norm());
    if (want_criticality) {
      const Vector c = s + cfg.beta * p.jac_h_block_transpose(i, state.x, residual);
      crit = std::max(crit, c.norm());
    }
  }
  const Vector sy = gG + p.B().apply_transpose(state.omega);
  rec.stat_x_max = stat_x_max;
  rec.stat_y = sy.norm();
  rec.feas = residual.norm();
  rec.omega_norm = state.omega.norm();
  if (want_criticality) {
    const double cy = (sy + cfg.beta * p.B().apply_transpose(residual)).norm();
    const double comega = (state.omega - state.omega_prev).norm() / (cfg.tau2 * cfg.beta);
    rec.criticality = std::max({crit, cy, comega});
  }
}

// grad G at the current y, carried from one iteration to the next.
struct StepCache {
  Vector grad_G_y;
};

TraceRecord initial_record(const IterateState& state, const SolverContext& ctx, StepCache& cache) {
  const Problem& p = ctx.problem;
  TraceRecord rec;
  rec.k = 0;
  const Vector hx = p.h(state.x);
  const Vector r = hx + p.B().apply(state.y);
  const double G_value = p.G_with_grad(state.y, cache.grad_G_y);
  rec.objective = p.tracked_objective_given_h(state.x, state.y, hx);
  rec.aug_lagrangian = lagrangian_from(p, state.x, G_value, state.omega, ctx.config.beta, r);
  fill_residuals(rec, state, ctx, r, cache.grad_G_y, false);
  const std::size_t s = state.x.num_blocks();
  rec.alpha.assign(s, 0.0);
  rec.eta.assign(s, kNaN);
  rec.gamma.assign(s, 0.0);
  return rec;
}

TraceRecord step(IterateState& state, const SolverContext& ctx, StepCache& cache) {
  const Problem& p = ctx.problem;
  const SolverConfig& cfg = ctx.config;
  const bool cheap = cfg.check_level != CheckLevel::kOff;
  const bool full = cfg.check_level == CheckLevel::kFull;
  const std::size_t s = state.x.num_blocks();

  TraceRecord rec;
  rec.alpha.resize(s);
  rec.eta.resize(s);
  rec.gamma.resize(s);

  const Vector omega_k = state.omega;
  double dx2_total = 0.0;
  double worst_block = 0.0;
  double worst_nsdp = -std::numeric_limits<double>::infinity();
  double lagr = full ? eval_aug_lagrangian(p, state.x, state.y, state.omega, cfg.beta) : kNaN;

  for (std::size_t i = 0; i < s; ++i) {
    BlockUpdate u = update_block(i, state, ctx);
    const double prev_gap2 = (state.x.block(i) - state.x_prev.block(i)).squaredNorm();
    state.x_prev.block(i) = state.x.block(i);
    state.x.block(i) = std::move(u.x_new);
    const double gap2 = (state.x.block(i) - state.x_prev.block(i)).squaredNorm();
    dx2_total += gap2;
    state.coeff[i] = u.coeff;
    state.f_subgradient[i] = std::move(u.f_subgradient);
    rec.alpha[i] = u.coeff.alpha;
    rec.eta[i] = u.coeff.eta;
    rec.gamma[i] = u.coeff.gamma;
    if (cheap) {
      const double tol = kBlockResidualTol * (1.0 + state.x.block(i).norm());
      if (!(u.optimality_residual <= tol)) {
        throw InvariantError("block " + std::to_string(i) + " subproblem residual " +
                             std::to_string(u.optimality_residual) + " at k=" +
                             std::to_string(state.k));
      }
      worst_block = std::max(worst_block, u.optimality_residual / (1.0 + state.x.block(i).norm()));
    }
    if (full) {
      const double next = eval_aug_lagrangian(p, state.x, state.y, state.omega, cfg.beta);
      worst_nsdp = std::max(worst_nsdp, relative_gap(next + u.coeff.eta * gap2,
                                                     lagr + u.coeff.gamma * prev_gap2, lagr));
      lagr = next;
    }
  }

  const Vector h_new = p.h(state.x);
  const YUpdate yu = update_y_impl(state, ctx, h_new, cache.grad_G_y);
  if (cheap && !(yu.optimality_residual <= kYResidualTol)) {
    throw InvariantError("y optimality residual " + std::to_string(yu.optimality_residual) +
                         " at k=" + std::to_string(state.k));
  }
  state.y_prev = state.y;
  state.y = yu.y_new;
  const Vector residual = h_new + p.B().apply(state.y);
  const double G_value = p.G_with_grad(state.y, cache.grad_G_y);
  if (full) {
    rec.lagr_before_y = lagr;
    rec.lagr_after_y = lagrangian_from(p, state.x, G_value, omega_k, cfg.beta, residual);
    rec.y_decrease_margin = 0.5 * ctx.constants.delta * (state.y - state.y_prev).squaredNorm();
    rec.nsdp_violation = worst_nsdp;
  }

  state.omega_prev = omega_k;
  state.omega = update_multiplier(omega_k, residual, cfg);
  if (cheap) {
    const Vector fresh = constraint_residual(p, state.x, state.y);
    const double step = cfg.tau2 * cfg.beta;
    const Vector implied = (state.omega - cfg.tau1 * omega_k) / step;
    const double scale =
        1.0 + fresh.norm() + (cfg.tau1 * omega_k.norm() + state.omega.norm()) / step;
    rec.multiplier_residual = (implied - fresh).norm() / scale;
    if (!(rec.multiplier_residual <= kMultiplierResidualTol)) {
      throw InvariantError("multiplier identity residual " +
                           std::to_string(rec.multiplier_residual) + " at k=" +
                           std::to_string(state.k));
    }
    rec.y_optimality_residual = yu.optimality_residual;
    rec.block_optimality_residual = worst_block;
  }

  state.k += 1;
  state.t_prev = state.t_cur;
  state.t_cur = nesterov_t_next(state.t_cur);

  rec.k = state.k;
  rec.objective = p.tracked_objective_given_h(state.x, state.y, h_new);
  const double L = lagrangian_from(p, state.x, G_value, state.omega, cfg.beta, residual);
  rec.aug_lagrangian = L;
  rec.lyapunov = lyapunov_from(L, state, ctx);
  fill_residuals(rec, state, ctx, residual, cache.grad_G_y, true);
  rec.dx = std::sqrt(dx2_total);
  rec.dy = (state.y - state.y_prev).norm();
  rec.domega = (state.omega - state.omega_prev).norm();
  return rec;
}

}  // namespace

RunResult run(const Problem& p, const SolverConfig& cfg, const InitialPoint& init) {
  RunResult result;
  result.constants = validate_config(cfg, p);
  const SolverContext ctx{p, cfg, result.constants};
  IterateState state = make_initial_state(p, init);

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  StepCache cache;
  result.trace.push_back(initial_record(state, ctx, cache));
  result.trace.back().wall_time_s = elapsed();
  for (;;) {
    if (cfg.max_iters && state.k >= *cfg.max_iters) {
      result.reason = StopReason::kIterationBudget;
      break;
    }
    if (cfg.max_seconds && elapsed() >= *cfg.max_seconds) {
      result.reason = StopReason::kTimeBudget;
      break;
    }
    TraceRecord rec = step(state, ctx, cache);
    rec.wall_time_s = elapsed();
    const bool done = cfg.tolerance > 0.0 && rec.criticality <= cfg.tolerance;
    result.trace.push_back(std::move(rec));
    if (done) {
      result.reason = StopReason::kConverged;
      result.converged = true;
      break;
    }
  }
  result.final_state = std::move(state);
  return result;
}

}  // namespace iadmm
