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


#include <Eigen/Cholesky>

#include "iadmm/errors.hpp"
#include "iadmm/logmf.hpp"

namespace iadmm::logmf {

namespace {

using ConstMap = Eigen::Map<const RowMatrix>;

ConstMap as_matrix(const Vector& v, Index rows, Index cols) {
  return ConstMap(v.data(), rows, cols);
}

Vector flatten(const RowMatrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

void check_block(std::size_t i) {
  if (i > 1) throw DimensionError("log-MF has blocks 0 (U) and 1 (V) only");
}

}  // namespace

LogMfProblem::LogMfProblem(LogMfInstance inst)
    : inst_(std::move(inst)), B_(inst_.m() * inst_.n(), -1.0), L_G_(0.0) {
  inst_.validate();
  L_G_ = logmf::lipschitz_G(inst_.Y, inst_.c);
}

BlockVector LogMfProblem::pack(const RowMatrix& U, const RowMatrix& V) const {
  if (U.rows() != inst_.m() || U.cols() != inst_.r || V.rows() != inst_.r ||
      V.cols() != inst_.n()) {
    throw DimensionError("factor shapes do not match the instance");
  }
  return BlockVector({flatten(U), flatten(V)});
}

RowMatrix LogMfProblem::unpack_U(const BlockVector& x) const {
  return as_matrix(x.block(0), inst_.m(), inst_.r);
}

RowMatrix LogMfProblem::unpack_V(const BlockVector& x) const {
  return as_matrix(x.block(1), inst_.r, inst_.n());
}

Vector LogMfProblem::pack_W(const RowMatrix& W) const {
  if (W.rows() != inst_.m() || W.cols() != inst_.n()) throw DimensionError("W shape mismatch");
  return flatten(W);
}

RowMatrix LogMfProblem::unpack_W(const Vector& y) const {
  if (y.size() != inst_.m() * inst_.n()) throw DimensionError("y length mismatch");
  return as_matrix(y, inst_.m(), inst_.n());
}

std::vector<Index> LogMfProblem::block_dims() const {
  return {inst_.m() * inst_.r, inst_.r * inst_.n()};
}

double LogMfProblem::F(const BlockVector& x) const {
  return 0.5 * inst_.lambda_d * x.block(0).squaredNorm() +
         0.5 * inst_.lambda_t * x.block(1).squaredNorm();
}

Vector LogMfProblem::grad_F_block(std::size_t i, const BlockVector& x) const {
  check_block(i);
  return (i == 0 ? inst_.lambda_d : inst_.lambda_t) * x.block(i);
}

double LogMfProblem::lipschitz_F_block(std::size_t i, const BlockVector&) const {
  check_block(i);
  return i == 0 ? inst_.lambda_d : inst_.lambda_t;
}

Vector LogMfProblem::h(const BlockVector& x) const {
  const auto U = as_matrix(x.block(0), inst_.m(), inst_.r);
  const auto V = as_matrix(x.block(1), inst_.r, inst_.n());
  return flatten(U * V);
}

Vector LogMfProblem::jac_h_block_transpose(std::size_t i, const BlockVector& x,
                                           const Vector& w) const {
  check_block(i);
  const auto Wm = as_matrix(w, inst_.m(), inst_.n());
  if (i == 0) {
    const auto V = as_matrix(x.block(1), inst_.r, inst_.n());
    return flatten(Wm * V.transpose());
  }
  const auto U = as_matrix(x.block(0), inst_.m(), inst_.r);
  return flatten(U.transpose() * Wm);
}

Vector LogMfProblem::jac_h_block_apply(std::size_t i, const BlockVector& x, const Vector& d) const {
  check_block(i);
  if (i == 0) {
    const auto D = as_matrix(d, inst_.m(), inst_.r);
    const auto V = as_matrix(x.block(1), inst_.r, inst_.n());
    return flatten(D * V);
  }
  const auto D = as_matrix(d, inst_.r, inst_.n());
  const auto U = as_matrix(x.block(0), inst_.m(), inst_.r);
  return flatten(U * D);
}

double LogMfProblem::lipschitz_h2_block(std::size_t i, const BlockVector& x) const {
  check_block(i);
  if (i == 0) return gram_norm_rows(as_matrix(x.block(1), inst_.r, inst_.n()));
  return gram_norm_cols(as_matrix(x.block(0), inst_.m(), inst_.r));
}

Vector LogMfProblem::coupled_prox(std::size_t i, const BlockVector& x, const Vector& v,
                                  double penalty, const Vector& center, double weight) const {
  check_block(i);
  const auto Vm = as_matrix(v, inst_.m(), inst_.n());
  if (i == 0) {
    // z (penalty V V^T + weight I) = weight c - Vm V^T
    const auto V = as_matrix(x.block(1), inst_.r, inst_.n());
    Eigen::MatrixXd M = penalty * (V * V.transpose());
    M.diagonal().array() += weight;
    const RowMatrix rhs = weight * as_matrix(center, inst_.m(), inst_.r) - Vm * V.transpose();
    Eigen::LLT<Eigen::MatrixXd> llt(M);
    if (llt.info() != Eigen::Success) throw NumericError("coupled_prox: system not positive definite");
    const RowMatrix z = llt.solve(rhs.transpose()).transpose();
    return flatten(z);
  }
  // (penalty U^T U + weight I) z = weight c - U^T Vm
  const auto U = as_matrix(x.block(0), inst_.m(), inst_.r);
  Eigen::MatrixXd M = penalty * (U.transpose() * U);
  M.diagonal().array() += weight;
  const RowMatrix rhs = weight * as_matrix(center, inst_.r, inst_.n()) - U.transpose() * Vm;
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) throw NumericError("coupled_prox: system not positive definite");
  const RowMatrix z = llt.solve(rhs);
  return flatten(z);
}

double LogMfProblem::G(const Vector& y) const {
  return logmf::G(unpack_W(y), inst_.Y, inst_.c);
}

Vector LogMfProblem::grad_G(const Vector& y) const {
  return flatten(logmf::grad_G(unpack_W(y), inst_.Y, inst_.c));
}

double LogMfProblem::G_with_grad(const Vector& y, Vector& grad) const {
  RowMatrix g;
  const double value = logmf::G_with_grad(unpack_W(y), inst_.Y, inst_.c, g);
  grad = flatten(g);
  return value;
}

BlockStructure LogMfProblem::block_structure(std::size_t i) const {
  check_block(i);
  return BlockStructure{true, true, true, true};
}

double LogMfProblem::tracked_objective(const BlockVector& x, const Vector&) const {
  return objective(unpack_U(x), unpack_V(x), inst_.Y, inst_.c, inst_.lambda_d, inst_.lambda_t);
}

double LogMfProblem::tracked_objective_given_h(const BlockVector& x, const Vector&,
                                               const Vector& hx) const {
  return logmf::G(unpack_W(hx), inst_.Y, inst_.c) + F(x);
}

}  // namespace iadmm::logmf
