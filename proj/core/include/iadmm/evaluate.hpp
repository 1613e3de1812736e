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

#include <vector>

#include "iadmm/block_vector.hpp"
#include "iadmm/problem.hpp"

namespace iadmm {

/// Norms of the three epsilon-stationarity conditions.
struct Residuals {
  std::vector<double> stat_x;  // ||chi_i + grad_{x_i} h(x)^T omega|| per block
  double stat_y = 0.0;         // ||grad G(y) + B^T omega||
  double feas = 0.0;           // ||h(x) + B y||

  double stat_x_max() const;
};

/// Throws DimensionError unless x, y (and omega when given) match the problem.
void check_shapes(const Problem& p, const BlockVector& x, const Vector& y);
void check_shapes(const Problem& p, const BlockVector& x, const Vector& y, const Vector& omega);

/// Theta(x, y) = F(x) + sum_i f_i(x_i) + G(y); +infinity if any f_i is.
double eval_objective(const Problem& p, const BlockVector& x, const Vector& y);

/// h(x) + B y.
Vector constraint_residual(const Problem& p, const BlockVector& x, const Vector& y);

/// Theta + <h(x) + By, omega> + (beta/2)||h(x) + By||^2.
double eval_aug_lagrangian(const Problem& p, const BlockVector& x, const Vector& y,
                           const Vector& omega, double beta);

/// Same, reusing an already computed constraint residual.
double eval_aug_lagrangian(const Problem& p, const BlockVector& x, const Vector& y,
                           const Vector& omega, double beta, const Vector& residual);

/// chi[i] must be an element of the subdifferential of f_i + F in block i at x.
Residuals stationarity_residuals(const Problem& p, const BlockVector& x, const Vector& y,
                                 const Vector& omega, const std::vector<Vector>& chi);

}  // namespace iadmm
