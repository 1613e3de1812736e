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

#include <memory>

#include <Eigen/Dense>

#include "iadmm/block_vector.hpp"

namespace iadmm {

/// The linear map B : R^m -> R^q of the coupling constraint h(x) + By = 0.
class CouplingOperator {
 public:
  virtual ~CouplingOperator() = default;

  virtual Index rows() const = 0;  // q
  virtual Index cols() const = 0;  // m

  virtual Vector apply(const Vector& y) const = 0;
  virtual Vector apply_transpose(const Vector& w) const = 0;

  /// lambda_min(B B^T); must be positive for the convergence theory.
  virtual double lambda_min_BBt() const = 0;
  /// lambda_min(B^T B).
  virtual double lambda_min_BtB() const = 0;

  /// Solves (beta B^T B + shift I) z = rhs.
  virtual Vector solve_normal(double beta, double shift, const Vector& rhs) const = 0;
};

/// B = scale * I on R^m (q = m). The log-MF instance uses scale = -1.
class ScaledIdentityCoupling final : public CouplingOperator {
 public:
  ScaledIdentityCoupling(Index dim, double scale);

  Index rows() const override { return dim_; }
  Index cols() const override { return dim_; }
  Vector apply(const Vector& y) const override;
  Vector apply_transpose(const Vector& w) const override;
  double lambda_min_BBt() const override { return scale_ * scale_; }
  double lambda_min_BtB() const override { return scale_ * scale_; }
  Vector solve_normal(double beta, double shift, const Vector& rhs) const override;

  double scale() const { return scale_; }

 private:
  Index dim_;
  double scale_;
};

/// Explicit dense B, for small problems.
class DenseCoupling final : public CouplingOperator {
 public:
  explicit DenseCoupling(Eigen::MatrixXd B);

  Index rows() const override { return B_.rows(); }
  Index cols() const override { return B_.cols(); }
  Vector apply(const Vector& y) const override;
  Vector apply_transpose(const Vector& w) const override;
  double lambda_min_BBt() const override { return lambda_min_BBt_; }
  double lambda_min_BtB() const override { return lambda_min_BtB_; }
  Vector solve_normal(double beta, double shift, const Vector& rhs) const override;

  const Eigen::MatrixXd& matrix() const { return B_; }

 private:
  Eigen::MatrixXd B_;
  Eigen::MatrixXd BtB_;
  double lambda_min_BBt_ = 0.0;
  double lambda_min_BtB_ = 0.0;
};

}  // namespace iadmm
