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


#include "iadmm/logmf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "iadmm/errors.hpp"
#include "iadmm/rng.hpp"

namespace iadmm::logmf {

void LogMfInstance::validate() const {
  if (Y.rows() < 1 || Y.cols() < 1) throw DomainError("Y must be non-empty");
  if (r < 1) throw DomainError("rank r must be >= 1");
  if (!(c >= 0.0)) throw DomainError("c must be >= 0");
  if (!(lambda_d >= 0.0) || !(lambda_t >= 0.0)) throw DomainError("lambdas must be >= 0");
  if (!(beta > 0.0)) throw DomainError("beta must be > 0");
  if (!((Y.array() == 0.0) || (Y.array() == 1.0)).all()) {
    throw DomainError("Y must contain only 0 and 1");
  }
}

SparseBinaryMatrix generate_instance(Index m, Index n, double density, std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0)) {
    throw DomainError("density must lie in [0, 1], got " + std::to_string(density));
  }
  if (m < 0 || n < 0) throw DomainError("negative matrix size");
  SparseBinaryMatrix Y;
  Y.rows = m;
  Y.cols = n;
  Xoshiro256 rng(seed);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (rng.bernoulli(density)) Y.entries.emplace_back(i, j);
    }
  }
  return Y;
}

std::pair<RowMatrix, RowMatrix> initial_factors(Index m, Index n, Index r, std::uint64_t seed) {
  if (m < 1 || n < 1 || r < 1) throw DomainError("factor sizes must be >= 1");
  Xoshiro256 rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(r));
  RowMatrix U(m, r);
  RowMatrix V(r, n);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < r; ++j) U(i, j) = scale * rng.normal();
  }
  for (Index i = 0; i < r; ++i) {
    for (Index j = 0; j < n; ++j) V(i, j) = scale * rng.normal();
  }
  return {std::move(U), std::move(V)};
}

double softplus(double w) { return std::max(w, 0.0) + std::log1p(std::exp(-std::abs(w))); }

double sigmoid(double w) {
  if (w >= 0.0) return 1.0 / (1.0 + std::exp(-w));
  const double e = std::exp(w);
  return e / (1.0 + e);
}

namespace {

void check_same_shape(const RowMatrix& W, const RowMatrix& Y) {
  if (W.rows() != Y.rows() || W.cols() != Y.cols()) {
    throw DimensionError("W is " + std::to_string(W.rows()) + "x" + std::to_string(W.cols()) +
                         ", Y is " + std::to_string(Y.rows()) + "x" + std::to_string(Y.cols()));
  }
}

double top_eigenvalue(const Eigen::MatrixXd& sym) {
  if (sym.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("eigenvalue solver failed");
  return std::max(0.0, es.eigenvalues().maxCoeff());
}

}  // namespace

double G(const RowMatrix& W, const RowMatrix& Y, double c) {
  check_same_shape(W, Y);
  double total = 0.0;
  const Index size = W.size();
  const double* w = W.data();
  const double* y = Y.data();
  for (Index k = 0; k < size; ++k) {
    total += (1.0 + c * y[k] - y[k]) * softplus(w[k]) - c * y[k] * w[k];
  }
  return total;
}

RowMatrix grad_G(const RowMatrix& W, const RowMatrix& Y, double c) {
  check_same_shape(W, Y);
  RowMatrix out(W.rows(), W.cols());
  const Index size = W.size();
  const double* w = W.data();
  const double* y = Y.data();
  double* o = out.data();
  for (Index k = 0; k < size; ++k) o[k] = (1.0 + c * y[k] - y[k]) * sigmoid(w[k]) - c * y[k];
  return out;
}

double G_with_grad(const RowMatrix& W, const RowMatrix& Y, double c, RowMatrix& grad) {
  check_same_shape(W, Y);
  grad.resize(W.rows(), W.cols());
  double total = 0.0;
  const Index size = W.size();
  const double* w = W.data();
  const double* y = Y.data();
  double* g = grad.data();
  for (Index k = 0; k < size; ++k) {
    const double a = 1.0 + c * y[k] - y[k];
    const double e = std::exp(-std::abs(w[k]));
    const double sp = std::max(w[k], 0.0) + std::log1p(e);
    const double sig = w[k] >= 0.0 ? 1.0 / (1.0 + e) : e / (1.0 + e);
    total += a * sp - c * y[k] * w[k];
    g[k] = a * sig - c * y[k];
  }
  return total;
}

double lipschitz_G(const RowMatrix& Y, double c) {
  if (c < 0.0) throw DomainError("c must be >= 0, got " + std::to_string(c));
  if (Y.size() == 0) return 0.25;
  return ((1.0 + c * Y.array() - Y.array()).maxCoeff()) / 4.0;
}

double objective(const RowMatrix& U, const RowMatrix& V, const RowMatrix& Y, double c,
                 double lambda_d, double lambda_t) {
  if (U.cols() != V.rows()) throw DimensionError("U and V inner dimensions differ");
  const RowMatrix UV = U * V;
  return G(UV, Y, c) + 0.5 * lambda_d * U.squaredNorm() + 0.5 * lambda_t * V.squaredNorm();
}

double gram_norm_rows(const RowMatrix& V) {
  return top_eigenvalue(Eigen::MatrixXd(V * V.transpose()));
}

double gram_norm_cols(const RowMatrix& U) {
  return top_eigenvalue(Eigen::MatrixXd(U.transpose() * U));
}

RowMatrix update_U(const LogMfState& state, const LogMfInstance& inst, const RowMatrix& U_ex) {
  const RowMatrix& V = state.V;
  const double L = gram_norm_rows(V);
  const double denom = inst.beta * L + inst.lambda_d;
  if (!(denom > 0.0)) throw NumericError("update_U: beta ||VV^T|| + lambda_d is zero");
  const RowMatrix R = state.omega + inst.beta * (U_ex * V - state.W);
  return (inst.beta * L * U_ex - R * V.transpose()) / denom;
}

RowMatrix update_V(const LogMfState& state, const LogMfInstance& inst, const RowMatrix& V_ex) {
  const RowMatrix& U = state.U;
  const double L = gram_norm_cols(U);
  const double denom = inst.beta * L + inst.lambda_t;
  if (!(denom > 0.0)) throw NumericError("update_V: beta ||U^TU|| + lambda_t is zero");
  const RowMatrix R = state.omega + inst.beta * (U * V_ex - state.W);
  return (inst.beta * L * V_ex - U.transpose() * R) / denom;
}

RowMatrix update_W(const LogMfState& state, const LogMfInstance& inst) {
  const double LG = lipschitz_G(inst.Y, inst.c);
  const double denom = inst.beta + LG;
  if (!(denom > 0.0)) throw NumericError("update_W: beta + L_G is zero");
  const RowMatrix UV = state.U * state.V;
  return (LG * state.W - grad_G(state.W, inst.Y, inst.c) + state.omega + inst.beta * UV) / denom;
}

std::pair<RowMatrix, RowMatrix> gd_baseline_step(const RowMatrix& U, const RowMatrix& V,
                                                 const RowMatrix& Y, double c, double lambda_d,
                                                 double lambda_t) {
  const double LG = lipschitz_G(Y, c);

  RowMatrix U_next = U;
  const double denom_U = LG * gram_norm_rows(V) + lambda_d;
  if (denom_U > 0.0) {
    const RowMatrix g = grad_G(U * V, Y, c) * V.transpose() + lambda_d * U;
    U_next -= g / denom_U;
  }

  RowMatrix V_next = V;
  const double denom_V = LG * gram_norm_cols(U_next) + lambda_t;
  if (denom_V > 0.0) {
    const RowMatrix g = U_next.transpose() * grad_G(U_next * V, Y, c) + lambda_t * V;
    V_next -= g / denom_V;
  }
  return {std::move(U_next), std::move(V_next)};
}

}  // namespace iadmm::logmf
