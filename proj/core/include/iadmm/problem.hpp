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

#include <cstddef>
#include <optional>
#include <vector>

#include "iadmm/block_vector.hpp"
#include "iadmm/coupling.hpp"

namespace iadmm {

/// Which block smoothness constant block_lipschitz() reports.
enum class LipschitzKind {
  kHSquared,  // l_i: Lipschitz constant of grad_{x_i} (1/2)||h(x)||^2
  kF,         // L_i: Lipschitz constant of grad_{x_i} F
  kCombined,  // L_i + beta * l_i, smoothness of F + (beta/2)||h||^2 in block i
};

/// Structural facts about block i used to pick the kappa rule and NSDP coefficients.
struct BlockStructure {
  bool h_affine = false;   // x_i -> h(x) is affine
  bool f_convex = false;   // f_i is convex
  bool F_convex = false;   // x_i -> F(x) is convex
  bool f_zero = false;     // f_i is identically zero
};

/// Problem instance:
///
///   minimize  F(x) + sum_i f_i(x_i) + G(y)   subject to  h(x) + B y = 0.
///
/// Defaults describe F = 0 and f_i = 0; override what the instance needs.
/// Oracles must be deterministic functions of their arguments.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::vector<Index> block_dims() const = 0;
  std::size_t num_blocks() const { return block_dims().size(); }
  /// q, the range dimension of h.
  virtual Index coupling_dim() const = 0;
  /// m, the length of y.
  virtual Index y_dim() const = 0;

  virtual double F(const BlockVector& x) const;
  virtual Vector grad_F_block(std::size_t i, const BlockVector& x) const;
  virtual double lipschitz_F_block(std::size_t i, const BlockVector& x) const;

  /// f_i(x_i); may return +infinity outside dom f_i.
  virtual double f(std::size_t i, const Vector& xi) const;
  /// argmin_z f_i(z) + (weight/2)||z - center||^2.
  virtual Vector prox_f(std::size_t i, const Vector& center, double weight) const;

  virtual Vector h(const BlockVector& x) const = 0;
  /// grad_{x_i} h(x)^T w, a vector of length n_i.
  virtual Vector jac_h_block_transpose(std::size_t i, const BlockVector& x,
                                       const Vector& w) const = 0;
  /// grad_{x_i} h(x) d, a vector of length q. Only needed by the default coupled_prox.
  virtual Vector jac_h_block_apply(std::size_t i, const BlockVector& x, const Vector& d) const;
  virtual double lipschitz_h2_block(std::size_t i, const BlockVector& x) const = 0;

  /// argmin_z f_i(z) + <h(z, x_rest), v> + (penalty/2)||h(z, x_rest)||^2 + (weight/2)||z - center||^2.
  ///
  /// Needed when h is not affine in block i, and by the exact-penalty rule. The
  /// default handles f_i = 0 with h affine in block i by a dense linear solve.
  virtual Vector coupled_prox(std::size_t i, const BlockVector& x, const Vector& v, double penalty,
                              const Vector& center, double weight) const;

  virtual const CouplingOperator& B() const = 0;

  virtual double G(const Vector& y) const = 0;
  virtual Vector grad_G(const Vector& y) const = 0;
  /// G(y) and grad G(y) from one call; instances may share work between them.
  virtual double G_with_grad(const Vector& y, Vector& grad) const;
  virtual double lipschitz_G() const = 0;
  virtual bool G_convex() const { return false; }

  virtual BlockStructure block_structure(std::size_t i) const;

  /// Declared lower bound nu of F + sum f_i + G, when known.
  virtual std::optional<double> objective_lower_bound() const { return std::nullopt; }

  /// Objective reported in traces. Defaults to Theta(x, y); an instance that
  /// eliminates y (B = -I) may report F + sum f_i + G(h(x)) instead.
  virtual double tracked_objective(const BlockVector& x, const Vector& y) const;
  /// Same value with hx = h(x) supplied by the caller.
  virtual double tracked_objective_given_h(const BlockVector& x, const Vector& y,
                                           const Vector& hx) const;

  /// False if oracles must not be called concurrently.
  virtual bool thread_safe() const { return true; }

  double block_lipschitz(std::size_t i, const BlockVector& x, LipschitzKind kind,
                         double beta) const;

  /// Throws ConfigError when sigma_B <= 0 or L_G < 0.
  void check_declaration() const;
};

}  // namespace iadmm
