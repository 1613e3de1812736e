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

#include <optional>
#include <vector>

#include "iadmm/engine.hpp"
#include "iadmm/logmf.hpp"

namespace iadmm::logmf {

struct GdOptions {
  std::optional<long> max_iters;
  std::optional<double> max_seconds;
};

struct GdResult {
  std::vector<TraceRecord> trace;
  RowMatrix U;
  RowMatrix V;
};

/// Alternating gradient descent from (U0, V0) on the unconstrained objective.
/// Each record holds the objective after one U and one V step; feas is 0,
/// aug_lagrangian equals the objective and lyapunov is NaN.
GdResult run_gd(const LogMfInstance& inst, const RowMatrix& U0, const RowMatrix& V0,
                const GdOptions& opts);

}  // namespace iadmm::logmf
