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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iadmm/errors.hpp"
#include "iadmm/problem.hpp"

namespace iadmm {

/// How block x_i is updated.
enum class UpdateRule {
  /// Linearize (beta/2)||h||^2 at the extrapolated point, majorize F by its
  /// block Lipschitz-gradient model at the current point. Needs l_i.
  kLinearizedPenalty,
  /// Linearize F + (beta/2)||h||^2 jointly at the extrapolated point. Needs L_i + beta l_i.
  kLinearizedSmooth,
  /// Keep (beta/2)||h||^2 exact, linearize F only. Needs L_i and coupled_prox.
  kExactPenalty,
};

enum class Extrapolation { kNone, kNesterovCapped };

enum class CheckLevel { kOff, kCheap, kFull };

struct KappaRule {
  enum class Mode {
    kAuto,      // kappa = l when the block allows it, else default_factor * l
    kExact,     // kappa = l; only valid for convex blocks with h affine
    kInflated,  // kappa = factor * l with factor > 1
  };
  Mode mode = Mode::kAuto;
  double factor = 1.01;
};

struct SolverConfig {
  double beta = 1.0;
  double tau1 = 1.0;
  double tau2 = 1.0;
  double B1 = 0.9999;
  double B2 = 0.5;

  // Per-block settings; an empty vector means "use the default for every block".
  std::vector<double> nu;
  std::vector<KappaRule> kappa;
  std::vector<UpdateRule> rules;

  double default_nu = 0.5;
  double default_kappa_factor = 1.01;

  Extrapolation extrapolation = Extrapolation::kNesterovCapped;

  std::optional<long> max_iters;
  std::optional<double> max_seconds;
  /// Stop once the criticality measure drops to this value; 0 disables.
  double tolerance = 0.0;

  std::uint64_t seed = 0;
  CheckLevel check_level = CheckLevel::kCheap;

  double nu_for(std::size_t i) const;
  KappaRule kappa_for(std::size_t i) const;
  UpdateRule rule_for(std::size_t i) const;
};

/// Constants of the Lyapunov analysis.
struct DerivedConstants {
  double C1 = 0.0;
  double C2 = 0.0;
  double C3 = 0.0;
  double delta = 0.0;
  double sigma_B = 0.0;
};

/// Each parameter condition that validate_config can reject.
enum class Condition {
  kBetaPositive,
  kTau1Range,        // tau1 in (0, 1]
  kTauRatioRange,    // tau2 / tau1 in (0, 2)
  kTauGap,           // |tau1 - tau2| < 1
  kB1Range,          // B1 in (0, 1)
  kB2Range,          // B2 in (0, 1)
  kNuRange,          // nu_i in (0, 1)
  kKappaFactor,      // inflation factor > 1
  kKappaExactNotAllowed,
  kBlockSettings,    // per-block vectors have the wrong length
  kSigmaBPositive,
  kLipschitzG,
  kC3Positive,
  kDualStepBound,    // 8 C2 L_G^2 <= B2 C3
  kBudget,
  kTolerance,
};

std::string_view to_string(Condition c);

class ParameterError : public ConfigError {
 public:
  ParameterError(Condition condition, const std::string& detail);
  Condition condition() const { return condition_; }

 private:
  Condition condition_;
};

/// Scalars that enter the parameter conditions.
struct ScalarParameters {
  double beta = 1.0;
  double tau1 = 1.0;
  double tau2 = 1.0;
  double B1 = 0.9999;
  double B2 = 0.5;
};

/// Facts about the problem that enter the parameter conditions.
struct ProblemConstants {
  double sigma_B = 1.0;         // lambda_min(B B^T)
  double lambda_min_BtB = 1.0;  // lambda_min(B^T B)
  double L_G = 0.0;
};

/// delta of the y-step sufficient decrease: L_G + beta * lambda_min(B^T B).
double y_decrease_constant(double beta, const ProblemConstants& pc);

/// Computes C1, C2, C3, delta without checking anything beyond what is
/// needed to avoid division by zero.
DerivedConstants derive_constants(const ScalarParameters& sp, const ProblemConstants& pc);

/// Returns the first violated scalar condition, or nullopt when all hold.
std::optional<Condition> first_violation(const ScalarParameters& sp, const ProblemConstants& pc);

/// Checks every parameter condition against the problem and returns the
/// constants of the analysis. Throws ParameterError naming the violation.
DerivedConstants validate_config(const SolverConfig& cfg, const Problem& p);

UpdateRule parse_update_rule(std::string_view s);
CheckLevel parse_check_level(std::string_view s);
std::string_view to_string(CheckLevel c);

}  // namespace iadmm
