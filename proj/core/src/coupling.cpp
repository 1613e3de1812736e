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

#include "iadmm/coupling.hpp"

#include <cmath>

#include "iadmm/errors.hpp"

namespace iadmm {

ScaledIdentityCoupling::ScaledIdentityCoupling(Index dim, double scale)
    : dim_(dim), scale_(scale) {
  if (dim < 1) throw DimensionError("coupling dimension must be >= 1");
}

Vector ScaledIdentityCoupling::apply(const Vector& y) const {
  if (y.size() != dim_) throw DimensionError("B y: y has wrong length");
  return scale_ * y;
}

Vector ScaledIdentityCoupling::apply_transpose(const Vector& w) const {
  if (w.size() != dim_) throw DimensionError("B^T w: w has wrong length");
  return scale_ * w;
}

Vector ScaledIdentityCoupling::solve_normal(double beta, double shift, const Vector& rhs) const {
  if (rhs.size() != dim_) throw DimensionError("normal solve: rhs has wrong length");
  const double d = beta * scale_ * scale_ + shift;
  if (!(d > 0.0)) throw NumericError("beta B^T B + L_G I is singular");
  return rhs / d;
}

DenseCoupling::DenseCoupling(Eigen::MatrixXd B) : B_(std::move(B)) {
  if (B_.rows() < 1 || B_.cols() < 1) throw DimensionError("B must be non-empty");
  BtB_ = B_.transpose() * B_;
  const Eigen::MatrixXd BBt = B_ * B_.transpose();
  lambda_min_BBt_ = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(BBt, Eigen::EigenvaluesOnly)
                        .eigenvalues()
                        .minCoeff();
  lambda_min_BtB_ = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(BtB_, Eigen::EigenvaluesOnly)
                        .eigenvalues()
                        .minCoeff();
  // Round-off can push a zero eigenvalue slightly negative.
  lambda_min_BBt_ = std::max(lambda_min_BBt_, 0.0);
  lambda_min_BtB_ = std::max(lambda_min_BtB_, 0.0);
}

Vector DenseCoupling::apply(const Vector& y) const {
  if (y.size() != B_.cols()) throw DimensionError("B y: y has wrong length");
  return B_ * y;
}

Vector DenseCoupling::apply_transpose(const Vector& w) const {
  if (w.size() != B_.rows()) throw DimensionError("B^T w: w has wrong length");
  return B_.transpose() * w;
}

Vector DenseCoupling::solve_normal(double beta, double shift, const Vector& rhs) const {
  if (rhs.size() != B_.cols()) throw DimensionError("normal solve: rhs has wrong length");
  Eigen::MatrixXd M = beta * BtB_;
  M.diagonal().array() += shift;
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) throw NumericError("beta B^T B + L_G I is singular");
  Vector z = llt.solve(rhs);
  if (!z.allFinite()) throw NumericError("normal solve produced non-finite values");
  return z;
}

}  // namespace iadmm
