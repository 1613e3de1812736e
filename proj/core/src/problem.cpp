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
#include "iadmm/problem.hpp"

#include <string>

#include <Eigen/Dense>

#include "iadmm/errors.hpp"
#include "iadmm/evaluate.hpp"

namespace iadmm {

double Problem::F(const BlockVector&) const { return 0.0; }

Vector Problem::grad_F_block(std::size_t i, const BlockVector& x) const {
  return Vector::Zero(x.block(i).size());
}

double Problem::lipschitz_F_block(std::size_t, const BlockVector&) const { return 0.0; }

double Problem::f(std::size_t, const Vector&) const { return 0.0; }

Vector Problem::prox_f(std::size_t, const Vector& center, double) const { return center; }

Vector Problem::jac_h_block_apply(std::size_t, const BlockVector&, const Vector&) const {
  throw ConfigError("problem does not provide jac_h_block_apply");
}

Vector Problem::coupled_prox(std::size_t i, const BlockVector& x, const Vector& v, double penalty,
                             const Vector& center, double weight) const {
  const BlockStructure s = block_structure(i);
  if (!(s.f_zero && s.h_affine)) {
    throw ConfigError("block " + std::to_string(i) +
                      ": coupled_prox oracle required (h not affine or f_i nonzero)");
  }
  // h(z, x_rest) = h0 + J (z - x_i) with J independent of z.
  const Index ni = x.block(i).size();
  const Index q = coupling_dim();
  Eigen::MatrixXd J(q, ni);
  Vector e = Vector::Zero(ni);
  for (Index j = 0; j < ni; ++j) {
    e[j] = 1.0;
    J.col(j) = jac_h_block_apply(i, x, e);
    e[j] = 0.0;
  }
  const Vector h0 = h(x);
  Eigen::MatrixXd M = penalty * (J.transpose() * J);
  M.diagonal().array() += weight;
  const Vector rhs =
      weight * center - J.transpose() * v - penalty * (J.transpose() * (h0 - J * x.block(i)));
  Eigen::LDLT<Eigen::MatrixXd> ldlt(M);
  if (ldlt.info() != Eigen::Success) throw NumericError("coupled_prox: singular system");
  Vector z = ldlt.solve(rhs);
  if (!z.allFinite()) throw NumericError("coupled_prox: non-finite solution");
  return z;
}

BlockStructure Problem::block_structure(std::size_t) const { return {}; }

double Problem::G_with_grad(const Vector& y, Vector& grad) const {
  grad = grad_G(y);
  return G(y);
}

double Problem::tracked_objective_given_h(const BlockVector& x, const Vector& y,
                                          const Vector&) const {
  return tracked_objective(x, y);
}

double Problem::tracked_objective(const BlockVector& x, const Vector& y) const {
  return eval_objective(*this, x, y);
}

double Problem::block_lipschitz(std::size_t i, const BlockVector& x, LipschitzKind kind,
                                double beta) const {
  double value = 0.0;
  switch (kind) {
    case LipschitzKind::kHSquared:
      value = lipschitz_h2_block(i, x);
      break;
    case LipschitzKind::kF:
      value = lipschitz_F_block(i, x);
      break;
    case LipschitzKind::kCombined:
      value = lipschitz_F_block(i, x) + beta * lipschitz_h2_block(i, x);
      break;
  }
  if (!(value >= 0.0)) {
    throw ConfigError("block " + std::to_string(i) + ": negative or NaN Lipschitz constant");
  }
  return value;
}

void Problem::check_declaration() const {
  const auto dims = block_dims();
  if (dims.empty()) throw ConfigError("problem declares zero blocks");
  for (Index d : dims) {
    if (d < 1) throw ConfigError("every block needs dimension >= 1");
  }
  if (B().rows() != coupling_dim() || B().cols() != y_dim()) {
    throw DimensionError("B must be q x m");
  }
  if (!(B().lambda_min_BBt() > 0.0)) throw ConfigError("sigma_B = lambda_min(B B^T) must be > 0");
  if (!(lipschitz_G() >= 0.0)) throw ConfigError("L_G must be >= 0");
}

}  // namespace iadmm
