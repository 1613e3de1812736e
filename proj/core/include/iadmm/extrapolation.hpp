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

#include "iadmm/config.hpp"

namespace iadmm {

/// t_k = (1 + sqrt(1 + 4 t_{k-1}^2)) / 2, starting from t_0 = 1.
double nesterov_t_next(double t_prev);

/// Everything the inertial weight of one block depends on.
///
/// `lipschitz_*` is the smoothness constant the block's update rule
/// linearizes (l_i, L_i + beta l_i, or L_i); `kappa_*` the matching
/// proximal constants. The `*_prev` values belong to the previous
/// update of the same block.
struct ExtrapolationInputs {
  double t_prev = 1.0;  // t_{k-1}
  double t_cur = 1.0;   // t_k
  double lipschitz_prev = 0.0;
  double lipschitz_cur = 0.0;
  double kappa_prev = 0.0;
  double kappa_cur = 0.0;
  bool exact_kappa = true;  // kappa = lipschitz (convex block with h affine)
  double nu = 0.5;
  double B1 = 0.9999;
};

/// Largest alpha keeping gamma_i^k <= B1 eta_i^{k-1}.
///
/// With kappa = l the NSDP coefficients are gamma = l alpha^2 / 2 and
/// eta = l / 2 (up to a common factor), and the cap is taken as
/// B1 sqrt(l_prev / l_cur). Otherwise gamma = (l + kappa)^2 alpha^2 /
/// (2 nu (kappa - l)) and eta = (1 - nu)(kappa - l) / 2, which gives
/// alpha <= sqrt(B1 nu (1 - nu) (kappa - l)(kappa_prev - l_prev)) / (l + kappa).
double inertia_cap(const ExtrapolationInputs& in);

/// alpha_i^k = min{(t_{k-1} - 1)/t_k, inertia_cap} for kNesterovCapped, 0 for kNone.
/// Throws ConfigError when a Lipschitz value it needs is not positive.
double extrapolation_weight(Extrapolation mode, const ExtrapolationInputs& in);

}  // namespace iadmm
