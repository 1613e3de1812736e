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

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "iadmm/block_vector.hpp"
#include "iadmm/coupling.hpp"
#include "iadmm/matrix_io.hpp"
#include "iadmm/problem.hpp"

namespace iadmm::logmf {

/// Logistic matrix factorization data:
///
///   min_{U,V} sum_ij (1 + c y_ij - y_ij) softplus(u_i v_j) - c y_ij u_i v_j
///             + (lambda_d/2)||U||^2 + (lambda_t/2)||V||^2,
///
/// solved in the split form with W = UV, h(U, V) = UV and B = -I.
struct LogMfInstance {
  RowMatrix Y;  // m x n, entries 0 or 1
  Index r = 1;
  double c = 1.0;
  double lambda_d = 0.0;
  double lambda_t = 0.0;
  double beta = 1.0;

  Index m() const { return Y.rows(); }
  Index n() const { return Y.cols(); }
  /// Throws DomainError on a non-binary Y, r < 1, an empty Y, c < 0, negative lambdas or beta <= 0.
  void validate() const;
};

struct LogMfState {
  RowMatrix U;      // m x r
  RowMatrix V;      // r x n
  RowMatrix W;      // m x n
  RowMatrix omega;  // m x n
};

/// m x n matrix with i.i.d. Bernoulli(density) entries, drawn row-major from
/// Xoshiro256(seed). Throws DomainError unless density is in [0, 1].
SparseBinaryMatrix generate_instance(Index m, Index n, double density, std::uint64_t seed);

/// U ~ N(0, 1/r) (m x r) then V ~ N(0, 1/r) (r x n), both row-major from Xoshiro256(seed).
std::pair<RowMatrix, RowMatrix> initial_factors(Index m, Index n, Index r, std::uint64_t seed);

/// log(1 + exp(w)) without overflow.
double softplus(double w);
/// 1 / (1 + exp(-w)) without overflow.
double sigmoid(double w);

double G(const RowMatrix& W, const RowMatrix& Y, double c);
RowMatrix grad_G(const RowMatrix& W, const RowMatrix& Y, double c);
/// G(W) and grad G(W) with one exponential per entry.
double G_with_grad(const RowMatrix& W, const RowMatrix& Y, double c, RowMatrix& grad);
/// max_ij (1 + c y_ij - y_ij) / 4. Throws DomainError for c < 0.
double lipschitz_G(const RowMatrix& Y, double c);

double objective(const RowMatrix& U, const RowMatrix& V, const RowMatrix& Y, double c,
                 double lambda_d, double lambda_t);

/// ||V V^T||_2 for V of shape r x n.
double gram_norm_rows(const RowMatrix& V);
/// ||U^T U||_2 for U of shape m x r.
double gram_norm_cols(const RowMatrix& U);

/// U+ = (beta ||VV^T|| U_ex - omega V^T - beta (U_ex V - W) V^T) / (beta ||VV^T|| + lambda_d).
RowMatrix update_U(const LogMfState& state, const LogMfInstance& inst, const RowMatrix& U_ex);
/// V+ = (beta ||U^TU|| V_ex - U^T omega - beta U^T (U V_ex - W)) / (beta ||U^TU|| + lambda_t),
/// with U = state.U already updated.
RowMatrix update_V(const LogMfState& state, const LogMfInstance& inst, const RowMatrix& V_ex);
/// W+ = (L_G W - grad G(W) + omega + beta U V) / (beta + L_G) with the updated U, V.
RowMatrix update_W(const LogMfState& state, const LogMfInstance& inst);

/// One alternating gradient step on U then V with inverse block Lipschitz step sizes.
std::pair<RowMatrix, RowMatrix> gd_baseline_step(const RowMatrix& U, const RowMatrix& V,
                                                 const RowMatrix& Y, double c, double lambda_d,
                                                 double lambda_t);

/// The split problem as a two-block Problem with x = (vec U, vec V), y = vec W.
class LogMfProblem final : public Problem {
 public:
  explicit LogMfProblem(LogMfInstance inst);

  const LogMfInstance& instance() const { return inst_; }

  BlockVector pack(const RowMatrix& U, const RowMatrix& V) const;
  RowMatrix unpack_U(const BlockVector& x) const;
  RowMatrix unpack_V(const BlockVector& x) const;
  Vector pack_W(const RowMatrix& W) const;
  RowMatrix unpack_W(const Vector& y) const;

  std::vector<Index> block_dims() const override;
  Index coupling_dim() const override { return inst_.m() * inst_.n(); }
  Index y_dim() const override { return inst_.m() * inst_.n(); }

  double F(const BlockVector& x) const override;
  Vector grad_F_block(std::size_t i, const BlockVector& x) const override;
  double lipschitz_F_block(std::size_t i, const BlockVector& x) const override;

  Vector h(const BlockVector& x) const override;
  Vector jac_h_block_transpose(std::size_t i, const BlockVector& x,
                               const Vector& w) const override;
  Vector jac_h_block_apply(std::size_t i, const BlockVector& x, const Vector& d) const override;
  double lipschitz_h2_block(std::size_t i, const BlockVector& x) const override;
  /// Solved through an r x r system since h is bilinear.
  Vector coupled_prox(std::size_t i, const BlockVector& x, const Vector& v, double penalty,
                      const Vector& center, double weight) const override;

  const CouplingOperator& B() const override { return B_; }
  double G(const Vector& y) const override;
  Vector grad_G(const Vector& y) const override;
  double G_with_grad(const Vector& y, Vector& grad) const override;
  double lipschitz_G() const override { return L_G_; }
  bool G_convex() const override { return true; }

  BlockStructure block_structure(std::size_t i) const override;
  std::optional<double> objective_lower_bound() const override { return 0.0; }
  /// The unconstrained objective at (U, V); y is ignored.
  double tracked_objective(const BlockVector& x, const Vector& y) const override;
  double tracked_objective_given_h(const BlockVector& x, const Vector& y,
                                   const Vector& hx) const override;

 private:
  LogMfInstance inst_;
  ScaledIdentityCoupling B_;
  double L_G_;
};

}  // namespace iadmm::logmf
