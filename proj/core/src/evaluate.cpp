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
#include "iadmm/evaluate.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "iadmm/errors.hpp"

namespace iadmm {

double Residuals::stat_x_max() const {
  double m = 0.0;
  for (double v : stat_x) m = std::max(m, v);
  return m;
}

void check_shapes(const Problem& p, const BlockVector& x, const Vector& y) {
  const auto dims = p.block_dims();
  x.check_shape(dims);
  if (y.size() != p.y_dim()) {
    throw DimensionError("y has length " + std::to_string(y.size()) + ", expected " +
                         std::to_string(p.y_dim()));
  }
}

void check_shapes(const Problem& p, const BlockVector& x, const Vector& y, const Vector& omega) {
  check_shapes(p, x, y);
  if (omega.size() != p.coupling_dim()) {
    throw DimensionError("omega has length " + std::to_string(omega.size()) + ", expected " +
                         std::to_string(p.coupling_dim()));
  }
}

double eval_objective(const Problem& p, const BlockVector& x, const Vector& y) {
  check_shapes(p, x, y);
  double total = p.F(x);
  for (std::size_t i = 0; i < x.num_blocks(); ++i) {
    const double fi = p.f(i, x.block(i));
    if (fi == std::numeric_limits<double>::infinity()) return fi;
    total += fi;
  }
  return total + p.G(y);
}

Vector constraint_residual(const Problem& p, const BlockVector& x, const Vector& y) {
  check_shapes(p, x, y);
  Vector r = p.h(x);
  if (r.size() != p.coupling_dim()) throw DimensionError("h(x) has wrong length");
  r += p.B().apply(y);
  return r;
}

double eval_aug_lagrangian(const Problem& p, const BlockVector& x, const Vector& y,
                           const Vector& omega, double beta, const Vector& residual) {
  check_shapes(p, x, y, omega);
  if (residual.size() != p.coupling_dim()) throw DimensionError("residual has wrong length");
  const double theta = eval_objective(p, x, y);
  if (theta == std::numeric_limits<double>::infinity()) return theta;
  return theta + residual.dot(omega) + 0.5 * beta * residual.squaredNorm();
}

double eval_aug_lagrangian(const Problem& p, const BlockVector& x, const Vector& y,
                           const Vector& omega, double beta) {
  if (!(beta > 0.0)) throw ConfigError("beta must be > 0");
  return eval_aug_lagrangian(p, x, y, omega, beta, constraint_residual(p, x, y));
}

Residuals stationarity_residuals(const Problem& p, const BlockVector& x, const Vector& y,
                                 const Vector& omega, const std::vector<Vector>& chi) {
  check_shapes(p, x, y, omega);
  if (chi.size() != x.num_blocks()) throw DimensionError("need one chi per block");
  Residuals r;
  r.stat_x.resize(chi.size());
  for (std::size_t i = 0; i < chi.size(); ++i) {
    if (chi[i].size() != x.block(i).size()) {
      throw DimensionError("chi[" + std::to_string(i) + "] has wrong length");
    }
    r.stat_x[i] = (chi[i] + p.jac_h_block_transpose(i, x, omega)).norm();
  }
  r.stat_y = (p.grad_G(y) + p.B().apply_transpose(omega)).norm();
  r.feas = constraint_residual(p, x, y).norm();
  return r;
}

}  // namespace iadmm
