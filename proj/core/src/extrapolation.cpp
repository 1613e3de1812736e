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

#include "iadmm/extrapolation.hpp"

#include <algorithm>
#include <cmath>

namespace iadmm {

double nesterov_t_next(double t_prev) {
  return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_prev * t_prev));
}

double inertia_cap(const ExtrapolationInputs& in) {
  if (!(in.lipschitz_prev > 0.0) || !(in.lipschitz_cur > 0.0)) {
    throw ConfigError("extrapolation needs positive block Lipschitz constants");
  }
  if (in.exact_kappa) return in.B1 * std::sqrt(in.lipschitz_prev / in.lipschitz_cur);

  const double gap_cur = in.kappa_cur - in.lipschitz_cur;
  const double gap_prev = in.kappa_prev - in.lipschitz_prev;
  if (!(gap_cur > 0.0) || !(gap_prev > 0.0)) {
    throw ConfigError("inflated kappa must exceed the block Lipschitz constant");
  }
  return std::sqrt(in.B1 * in.nu * (1.0 - in.nu) * gap_cur * gap_prev) /
         (in.lipschitz_cur + in.kappa_cur);
}

double extrapolation_weight(Extrapolation mode, const ExtrapolationInputs& in) {
  if (mode == Extrapolation::kNone) return 0.0;
  const double momentum = (in.t_prev - 1.0) / in.t_cur;
  const double cap = inertia_cap(in);
  return std::max(0.0, std::min(momentum, cap));
}

}  // namespace iadmm
