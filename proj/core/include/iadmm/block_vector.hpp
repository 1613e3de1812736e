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
#include <span>
#include <vector>

#include <Eigen/Core>

namespace iadmm {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
/// Dense matrices are stored row-major everywhere a layout is observable.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// The primal variable x = (x_1, ..., x_s), each block a dense vector.
class BlockVector {
 public:
  BlockVector() = default;
  explicit BlockVector(std::vector<Vector> blocks);

  /// Zero-filled blocks with the given sizes.
  static BlockVector zeros(std::span<const Index> dims);

  std::size_t num_blocks() const { return blocks_.size(); }
  Index total_dim() const;

  const Vector& block(std::size_t i) const { return blocks_.at(i); }
  Vector& block(std::size_t i) { return blocks_.at(i); }

  const std::vector<Vector>& blocks() const { return blocks_; }

  std::vector<Index> dims() const;

  /// Throws DimensionError unless block count and sizes equal `dims`.
  void check_shape(std::span<const Index> dims) const;

  double squared_norm() const;

  BlockVector operator-(const BlockVector& other) const;

 private:
  std::vector<Vector> blocks_;
};

}  // namespace iadmm
