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

#include "iadmm/config.hpp"

#include <cmath>

namespace iadmm {

double SolverConfig::nu_for(std::size_t i) const { return nu.empty() ? default_nu : nu.at(i); }

KappaRule SolverConfig::kappa_for(std::size_t i) const {
  if (kappa.empty()) return KappaRule{KappaRule::Mode::kAuto, default_kappa_factor};
  return kappa.at(i);
}

UpdateRule SolverConfig::rule_for(std::size_t i) const {
  return rules.empty() ? UpdateRule::kLinearizedPenalty : rules.at(i);
}

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::kBetaPositive: return "beta > 0";
    case Condition::kTau1Range: return "tau1 in (0,1]";
    case Condition::kTauRatioRange: return "tau2/tau1 in (0,2)";
    case Condition::kTauGap: return "|tau1 - tau2| < 1";
    case Condition::kB1Range: return "B1 in (0,1)";
    case Condition::kB2Range: return "B2 in (0,1)";
    case Condition::kNuRange: return "nu_i in (0,1)";
    case Condition::kKappaFactor: return "kappa inflation factor > 1";
    case Condition::kKappaExactNotAllowed: return "kappa = l needs a convex block with h affine";
    case Condition::kBlockSettings: return "per-block settings match block count";
    case Condition::kSigmaBPositive: return "sigma_B = lambda_min(B B^T) > 0";
    case Condition::kLipschitzG: return "L_G >= 0";
    case Condition::kC3Positive: return "C3 > 0";
    case Condition::kDualStepBound: return "8 C2 L_G^2 <= B2 C3";
    case Condition::kBudget: return "an iteration or time budget is set";
    case Condition::kTolerance: return "tolerance >= 0";
  }
  return "unknown condition";
}

ParameterError::ParameterError(Condition condition, const std::string& detail)
    : ConfigError("parameter condition violated [" + std::string(to_string(condition)) + "]: " +
                  detail),
      condition_(condition) {}

double y_decrease_constant(double beta, const ProblemConstants& pc) {
  return pc.L_G + beta * pc.lambda_min_BtB;
}

DerivedConstants derive_constants(const ScalarParameters& sp, const ProblemConstants& pc) {
  DerivedConstants d;
  d.sigma_B = pc.sigma_B;
  d.delta = y_decrease_constant(sp.beta, pc);
  const double gap = std::abs(sp.tau1 - sp.tau2);
  const double ratio = sp.tau2 / sp.tau1;
  d.C1 = (sp.tau1 + 1.0) * gap / (2.0 * pc.sigma_B * sp.tau2 * sp.beta * (1.0 - gap));
  d.C2 = (sp.tau1 + 1.0) * ratio /
         (2.0 * pc.sigma_B * sp.beta * (1.0 - gap) * (1.0 - std::abs(1.0 - ratio)));
  d.C3 = d.delta / 2.0 - 2.0 * d.C2 * pc.L_G * pc.L_G;
  return d;
}

std::optional<Condition> first_violation(const ScalarParameters& sp, const ProblemConstants& pc) {
  if (!(sp.beta > 0.0)) return Condition::kBetaPositive;
  if (!(sp.tau1 > 0.0 && sp.tau1 <= 1.0)) return Condition::kTau1Range;
  const double ratio = sp.tau2 / sp.tau1;
  if (!(ratio > 0.0 && ratio < 2.0)) return Condition::kTauRatioRange;
  if (!(std::abs(sp.tau1 - sp.tau2) < 1.0)) return Condition::kTauGap;
  if (!(sp.B1 > 0.0 && sp.B1 < 1.0)) return Condition::kB1Range;
  if (!(sp.B2 > 0.0 && sp.B2 < 1.0)) return Condition::kB2Range;
  if (!(pc.sigma_B > 0.0)) return Condition::kSigmaBPositive;
  if (!(pc.L_G >= 0.0)) return Condition::kLipschitzG;
  const DerivedConstants d = derive_constants(sp, pc);
  if (!(d.C3 > 0.0)) return Condition::kC3Positive;
  if (!(8.0 * d.C2 * pc.L_G * pc.L_G <= sp.B2 * d.C3)) return Condition::kDualStepBound;
  return std::nullopt;
}

namespace {

bool exact_kappa_allowed(UpdateRule rule, const BlockStructure& s) {
  switch (rule) {
    case UpdateRule::kLinearizedPenalty:
      return s.h_affine && s.f_convex;
    case UpdateRule::kLinearizedSmooth:
    case UpdateRule::kExactPenalty:
      return s.h_affine && s.f_convex && s.F_convex;
  }
  return false;
}

}  // namespace

DerivedConstants validate_config(const SolverConfig& cfg, const Problem& p) {
  const ScalarParameters sp{cfg.beta, cfg.tau1, cfg.tau2, cfg.B1, cfg.B2};
  const ProblemConstants pc{p.B().lambda_min_BBt(), p.B().lambda_min_BtB(), p.lipschitz_G()};
  if (auto v = first_violation(sp, pc)) {
    const DerivedConstants d = derive_constants(sp, pc);
    throw ParameterError(*v, "beta=" + std::to_string(cfg.beta) +
                                 " tau1=" + std::to_string(cfg.tau1) +
                                 " tau2=" + std::to_string(cfg.tau2) +
                                 " B1=" + std::to_string(cfg.B1) + " B2=" + std::to_string(cfg.B2) +
                                 " C2=" + std::to_string(d.C2) + " C3=" + std::to_string(d.C3));
  }

  const std::size_t s = p.num_blocks();
  if ((!cfg.nu.empty() && cfg.nu.size() != s) || (!cfg.kappa.empty() && cfg.kappa.size() != s) ||
      (!cfg.rules.empty() && cfg.rules.size() != s)) {
    throw ParameterError(Condition::kBlockSettings, "problem has " + std::to_string(s) + " blocks");
  }
  if (!(cfg.default_kappa_factor > 1.0)) {
    throw ParameterError(Condition::kKappaFactor, "default factor " +
                                                      std::to_string(cfg.default_kappa_factor));
  }
  for (std::size_t i = 0; i < s; ++i) {
    const double nu = cfg.nu_for(i);
    if (!(nu > 0.0 && nu < 1.0)) {
      throw ParameterError(Condition::kNuRange,
                           "block " + std::to_string(i) + " nu=" + std::to_string(nu));
    }
    const KappaRule kr = cfg.kappa_for(i);
    if (kr.mode == KappaRule::Mode::kInflated && !(kr.factor > 1.0)) {
      throw ParameterError(Condition::kKappaFactor,
                           "block " + std::to_string(i) + " factor=" + std::to_string(kr.factor));
    }
    if (kr.mode == KappaRule::Mode::kExact &&
        !exact_kappa_allowed(cfg.rule_for(i), p.block_structure(i))) {
      throw ParameterError(Condition::kKappaExactNotAllowed, "block " + std::to_string(i));
    }
  }
  if (!cfg.max_iters && !cfg.max_seconds) {
    throw ParameterError(Condition::kBudget, "set max_iters and/or max_seconds");
  }
  if ((cfg.max_iters && *cfg.max_iters < 0) || (cfg.max_seconds && !(*cfg.max_seconds >= 0.0))) {
    throw ParameterError(Condition::kBudget, "budgets must be non-negative");
  }
  if (!(cfg.tolerance >= 0.0)) {
    throw ParameterError(Condition::kTolerance, std::to_string(cfg.tolerance));
  }
  p.check_declaration();
  return derive_constants(sp, pc);
}

UpdateRule parse_update_rule(std::string_view s) {
  if (s == "A" || s == "linearized_penalty") return UpdateRule::kLinearizedPenalty;
  if (s == "B" || s == "linearized_smooth") return UpdateRule::kLinearizedSmooth;
  if (s == "C" || s == "exact_penalty") return UpdateRule::kExactPenalty;
  throw ConfigError("unknown update rule '" + std::string(s) + "'");
}

CheckLevel parse_check_level(std::string_view s) {
  if (s == "off") return CheckLevel::kOff;
  if (s == "cheap") return CheckLevel::kCheap;
  if (s == "full") return CheckLevel::kFull;
  throw ConfigError("unknown check level '" + std::string(s) + "' (off, cheap, full)");
}

std::string_view to_string(CheckLevel c) {
  switch (c) {
    case CheckLevel::kOff: return "off";
    case CheckLevel::kCheap: return "cheap";
    case CheckLevel::kFull: return "full";
  }
  return "off";
}

}  // namespace iadmm
