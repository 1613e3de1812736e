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


// Small problem instances with hand-checkable structure, shared by the tests.

#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "iadmm/coupling.hpp"
#include "iadmm/errors.hpp"
#include "iadmm/problem.hpp"
#include "iadmm/rng.hpp"

namespace iadmm::testing {

inline Eigen::MatrixXd random_matrix(Xoshiro256& rng, Index rows, Index cols, double scale = 1.0) {
  Eigen::MatrixXd m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = scale * rng.normal();
  }
  return m;
}

inline Vector random_vector(Xoshiro256& rng, Index n, double scale = 1.0) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = scale * rng.normal();
  return v;
}

inline double top_eig(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  return es.eigenvalues().maxCoeff();
}

/// h(x) = sum_i A_i x_i + h0, F = sum_i (lf_i/2)||x_i - a_i||^2, f_i = l1_i ||x_i||_1,
/// G(y) = (mu/2)||y - b||^2 with coupling matrix B (or -I when none is given).
class LinearToy : public Problem {
 public:
  LinearToy(std::vector<Eigen::MatrixXd> A, Vector h0, std::vector<Vector> a, std::vector<double> lf,
            std::vector<double> l1, Vector b, double mu,
            std::unique_ptr<CouplingOperator> B = nullptr)
      : A_(std::move(A)), h0_(std::move(h0)), a_(std::move(a)), lf_(std::move(lf)),
        l1_(std::move(l1)), b_(std::move(b)), mu_(mu), B_(std::move(B)) {
    if (!B_) B_ = std::make_unique<ScaledIdentityCoupling>(h0_.size(), -1.0);
  }

  std::vector<Index> block_dims() const override {
    std::vector<Index> d;
    for (const auto& A : A_) d.push_back(A.cols());
    return d;
  }
  Index coupling_dim() const override { return h0_.size(); }
  Index y_dim() const override { return b_.size(); }

  double F(const BlockVector& x) const override {
    double v = 0.0;
    for (std::size_t i = 0; i < A_.size(); ++i) v += 0.5 * lf_[i] * (x.block(i) - a_[i]).squaredNorm();
    return v;
  }
  Vector grad_F_block(std::size_t i, const BlockVector& x) const override {
    return lf_[i] * (x.block(i) - a_[i]);
  }
  double lipschitz_F_block(std::size_t i, const BlockVector&) const override { return lf_[i]; }

  double f(std::size_t i, const Vector& xi) const override { return l1_[i] * xi.lpNorm<1>(); }
  Vector prox_f(std::size_t i, const Vector& center, double weight) const override {
    const double t = l1_[i] / weight;
    return center.unaryExpr([t](double c) { return std::copysign(std::max(std::abs(c) - t, 0.0), c); });
  }

  Vector h(const BlockVector& x) const override {
    Vector out = h0_;
    for (std::size_t i = 0; i < A_.size(); ++i) out += A_[i] * x.block(i);
    return out;
  }
  Vector jac_h_block_transpose(std::size_t i, const BlockVector&, const Vector& w) const override {
    return A_[i].transpose() * w;
  }
  Vector jac_h_block_apply(std::size_t i, const BlockVector&, const Vector& d) const override {
    return A_[i] * d;
  }
  double lipschitz_h2_block(std::size_t i, const BlockVector&) const override {
    return top_eig(A_[i].transpose() * A_[i]);
  }

  const CouplingOperator& B() const override { return *B_; }
  double G(const Vector& y) const override { return 0.5 * mu_ * (y - b_).squaredNorm(); }
  Vector grad_G(const Vector& y) const override { return mu_ * (y - b_); }
  double lipschitz_G() const override { return mu_; }
  bool G_convex() const override { return true; }

  BlockStructure block_structure(std::size_t i) const override {
    return BlockStructure{true, true, true, l1_[i] == 0.0};
  }
  std::optional<double> objective_lower_bound() const override { return 0.0; }

  const Eigen::MatrixXd& A(std::size_t i) const { return A_[i]; }
  const Vector& a(std::size_t i) const { return a_[i]; }
  const Vector& b() const { return b_; }
  const Vector& h0() const { return h0_; }
  double mu() const { return mu_; }

 private:
  std::vector<Eigen::MatrixXd> A_;
  Vector h0_;
  std::vector<Vector> a_;
  std::vector<double> lf_;
  std::vector<double> l1_;
  Vector b_;
  double mu_;
  std::unique_ptr<CouplingOperator> B_;
};

/// Random LinearToy with B = -I: blocks of the given sizes, q rows.
inline LinearToy random_linear_toy(std::uint64_t seed, std::vector<Index> sizes, Index q, double mu,
                                   double l1 = 0.0, double lf = 1.0) {
  Xoshiro256 rng(seed);
  std::vector<Eigen::MatrixXd> A;
  std::vector<Vector> a;
  std::vector<double> lfs, l1s;
  for (Index n : sizes) {
    A.push_back(random_matrix(rng, q, n, 1.0 / std::sqrt(static_cast<double>(q))));
    a.push_back(random_vector(rng, n));
    lfs.push_back(lf);
    l1s.push_back(l1);
  }
  Vector h0 = random_vector(rng, q, 0.1);
  Vector b = random_vector(rng, q);
  return LinearToy(std::move(A), std::move(h0), std::move(a), std::move(lfs), std::move(l1s),
                   std::move(b), mu);
}

/// Two blocks of length n: h(x) = sin(x_0) + x_1 (entrywise), B = -I,
/// F = (lf/2)||x||^2, f = 0, G(y) = (mu/2)||y - b||^2. Block 0 is not affine in h.
class SineToy : public Problem {
 public:
  SineToy(Index n, Vector b, double mu, double lf) : n_(n), b_(std::move(b)), mu_(mu), lf_(lf), B_(n, -1.0) {}

  std::vector<Index> block_dims() const override { return {n_, n_}; }
  Index coupling_dim() const override { return n_; }
  Index y_dim() const override { return n_; }

  double F(const BlockVector& x) const override {
    return 0.5 * lf_ * (x.block(0).squaredNorm() + x.block(1).squaredNorm());
  }
  Vector grad_F_block(std::size_t i, const BlockVector& x) const override { return lf_ * x.block(i); }
  double lipschitz_F_block(std::size_t, const BlockVector&) const override { return lf_; }

  Vector h(const BlockVector& x) const override {
    return x.block(0).array().sin().matrix() + x.block(1);
  }
  Vector jac_h_block_transpose(std::size_t i, const BlockVector& x, const Vector& w) const override {
    if (i == 0) return (x.block(0).array().cos() * w.array()).matrix();
    return w;
  }
  Vector jac_h_block_apply(std::size_t i, const BlockVector& x, const Vector& d) const override {
    return jac_h_block_transpose(i, x, d);
  }
  /// d/dz [cos z (sin z + c)] = cos 2z - c sin z, bounded by 1 + |c|.
  double lipschitz_h2_block(std::size_t i, const BlockVector& x) const override {
    if (i == 0) return 1.0 + x.block(1).lpNorm<Eigen::Infinity>();
    return 1.0;
  }

  /// Entrywise scalar problems v sin z + (p/2)(sin z + c)^2 + (w/2)(z - cen)^2, minimized
  /// globally: every stationary point lies within (|v| + p(1 + |c|))/w of cen, so a
  /// grid over that interval followed by bisection on the derivative finds the minimizer.
  Vector coupled_prox(std::size_t i, const BlockVector& x, const Vector& v, double penalty,
                      const Vector& center, double weight) const override {
    if (i == 1) return Problem::coupled_prox(i, x, v, penalty, center, weight);
    Vector z(n_);
    for (Index j = 0; j < n_; ++j) {
      const double c = x.block(1)[j];
      const auto phi = [&](double t) {
        const double s = std::sin(t) + c;
        return v[j] * std::sin(t) + 0.5 * penalty * s * s + 0.5 * weight * (t - center[j]) * (t - center[j]);
      };
      const double radius = (std::abs(v[j]) + penalty * (1.0 + std::abs(c))) / weight + 1e-3;
      const int points = 20001;
      const double h = 2.0 * radius / (points - 1);
      double best = center[j] - radius;
      double best_val = phi(best);
      for (int k = 1; k < points; ++k) {
        const double t = center[j] - radius + k * h;
        const double val = phi(t);
        if (val < best_val) {
          best_val = val;
          best = t;
        }
      }
      const auto dphi = [&](double t) {
        return (v[j] + penalty * (std::sin(t) + c)) * std::cos(t) + weight * (t - center[j]);
      };
      double lo = best - h, hi = best + h;
      if (dphi(lo) < 0.0 && dphi(hi) > 0.0) {
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (dphi(mid) > 0.0) {
            hi = mid;
          } else {
            lo = mid;
          }
        }
      } else {
        lo = hi = best;
      }
      z[j] = 0.5 * (lo + hi);
    }
    return z;
  }

  const CouplingOperator& B() const override { return B_; }
  double G(const Vector& y) const override { return 0.5 * mu_ * (y - b_).squaredNorm(); }
  Vector grad_G(const Vector& y) const override { return mu_ * (y - b_); }
  double lipschitz_G() const override { return mu_; }
  bool G_convex() const override { return true; }

  BlockStructure block_structure(std::size_t i) const override {
    return BlockStructure{i == 1, true, true, true};
  }
  std::optional<double> objective_lower_bound() const override { return 0.0; }

 private:
  Index n_;
  Vector b_;
  double mu_;
  double lf_;
  ScaledIdentityCoupling B_;
};

}  // namespace iadmm::testing
