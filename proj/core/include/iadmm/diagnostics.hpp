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

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "iadmm/block_vector.hpp"
#include "iadmm/config.hpp"
#include "iadmm/engine.hpp"

namespace iadmm::diag {

enum class CheckStatus { kPassed, kFailed, kInconclusive };

std::string_view to_string(CheckStatus s);

/// Outcome of one verification. `passed` holds iff worst_violation <= tolerance;
/// an inconclusive check is not passed and carries a NaN violation.
struct CheckReport {
  std::string name;
  CheckStatus status = CheckStatus::kInconclusive;
  bool passed = false;
  double worst_violation = kNaN;
  long iteration = -1;  // -1 when not applicable
  long block = -1;
  double tolerance = 0.0;
  std::string detail;
};

/// JSON object {name, status, passed, worst_violation, location: {iteration, block},
/// tolerance, detail}. NaN becomes null.
std::string to_json(const CheckReport& report);
std::string to_json(const std::vector<CheckReport>& reports);

using ScalarFunction = std::function<double(const Vector&)>;

/// Central differences (f(x + h e_j) - f(x - h e_j)) / (2h). Throws DomainError for h <= 0.
Vector finite_diff_grad(const ScalarFunction& f, const Vector& x, double h = 1e-5);

struct Box {
  Vector lower;
  Vector upper;
};

/// Minimizes f over a uniform grid with `points_per_dim` points per coordinate,
/// then refines by coordinate pattern search over 30 rounds, halving the step each
/// round. Deterministic. Throws DomainError for an empty box, mismatched bounds,
/// points_per_dim < 1 or more than 1e7 grid points.
Vector brute_force_argmin(const ScalarFunction& f, const Box& box, long points_per_dim);

enum class DescentKind { kLyapunov, kYSufficientDecrease };

/// kLyapunov: max over k of (L^{k+1} - L^k) / (1 + |L^k|) over records with a
/// finite Lyapunov value.
/// kYSufficientDecrease: max over k of (L_after + (delta/2)||dy||^2 - L_before) /
/// (1 + |L_before|), from traces recorded at check level full.
/// Throws SchemaError when fewer than two usable records exist.
CheckReport check_descent(const std::vector<TraceRecord>& trace, DescentKind kind, double tol);

/// max over k >= 1 of (nu - L^k), relative to 1; passes when it is at most tol.
CheckReport check_lower_bound(const std::vector<TraceRecord>& trace, double nu, double tol);

/// Max recorded per-block NSDP violation (full check level only).
CheckReport check_nsdp(const std::vector<TraceRecord>& trace, double tol);

/// |feas - p| / (1 + p) <= tol at the final record, with p = ((1 - tau1)/(tau2 beta)) ||omega||.
/// For tau1 = 1 this is feas <= tol. Inconclusive unless the final record's
/// criticality is at most cfg.tolerance.
CheckReport check_residual_consistency(const std::vector<TraceRecord>& trace, const SolverConfig& cfg,
                                    double tol);

}  // namespace iadmm::diag
