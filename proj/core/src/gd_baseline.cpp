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


#include "iadmm/gd_baseline.hpp"

#include <chrono>
#include <cmath>

#include "iadmm/errors.hpp"

namespace iadmm::logmf {

GdResult run_gd(const LogMfInstance& inst, const RowMatrix& U0, const RowMatrix& V0,
                const GdOptions& opts) {
  inst.validate();
  if (!opts.max_iters && !opts.max_seconds) throw ConfigError("GD needs an iteration or time budget");
  if (U0.rows() != inst.m() || U0.cols() != inst.r || V0.rows() != inst.r ||
      V0.cols() != inst.n()) {
    throw DimensionError("initial factors do not match the instance");
  }
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  GdResult out;
  out.U = U0;
  out.V = V0;
  const double LG = lipschitz_G(inst.Y, inst.c);
  const auto regularizer = [&] {
    return 0.5 * inst.lambda_d * out.U.squaredNorm() + 0.5 * inst.lambda_t * out.V.squaredNorm();
  };

  // grad G at the current U V; the objective pass of one step yields the
  // gradient the next U step needs.
  RowMatrix grad;
  double G_value = G_with_grad(out.U * out.V, inst.Y, inst.c, grad);
  const auto record = [&](long k, double dx) {
    TraceRecord rec;
    rec.k = k;
    rec.objective = G_value + regularizer();
    rec.aug_lagrangian = rec.objective;
    rec.feas = 0.0;
    rec.dx = dx;
    rec.wall_time_s = elapsed();
    out.trace.push_back(std::move(rec));
  };

  record(0, 0.0);
  for (long k = 0;; ++k) {
    if (opts.max_iters && k >= *opts.max_iters) break;
    if (opts.max_seconds && elapsed() >= *opts.max_seconds) break;
    double dx2 = 0.0;
    const double denom_U = LG * gram_norm_rows(out.V) + inst.lambda_d;
    if (denom_U > 0.0) {
      const RowMatrix step = (grad * out.V.transpose() + inst.lambda_d * out.U) / denom_U;
      dx2 += step.squaredNorm();
      out.U -= step;
    }
    const double denom_V = LG * gram_norm_cols(out.U) + inst.lambda_t;
    if (denom_V > 0.0) {
      const RowMatrix g = grad_G(out.U * out.V, inst.Y, inst.c);
      const RowMatrix step = (out.U.transpose() * g + inst.lambda_t * out.V) / denom_V;
      dx2 += step.squaredNorm();
      out.V -= step;
    }
    if (!out.U.allFinite() || !out.V.allFinite()) throw NumericError("GD produced non-finite factors");
    G_value = G_with_grad(out.U * out.V, inst.Y, inst.c, grad);
    record(k + 1, std::sqrt(dx2));
  }
  return out;
}

}  // namespace iadmm::logmf
