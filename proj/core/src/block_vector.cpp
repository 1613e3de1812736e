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

#include "iadmm/block_vector.hpp"

#include <string>

#include "iadmm/errors.hpp"

namespace iadmm {

BlockVector::BlockVector(std::vector<Vector> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw DimensionError("BlockVector needs at least one block");
}

BlockVector BlockVector::zeros(std::span<const Index> dims) {
  std::vector<Vector> blocks;
  blocks.reserve(dims.size());
  for (Index d : dims) blocks.push_back(Vector::Zero(d));
  return BlockVector(std::move(blocks));
}

Index BlockVector::total_dim() const {
  Index n = 0;
  for (const auto& b : blocks_) n += b.size();
  return n;
}

std::vector<Index> BlockVector::dims() const {
  std::vector<Index> d;
  d.reserve(blocks_.size());
  for (const auto& b : blocks_) d.push_back(b.size());
  return d;
}

void BlockVector::check_shape(std::span<const Index> dims) const {
  if (blocks_.size() != dims.size()) {
    throw DimensionError("block count " + std::to_string(blocks_.size()) + " != declared " +
                         std::to_string(dims.size()));
  }
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (blocks_[i].size() != dims[i]) {
      throw DimensionError("block " + std::to_string(i) + " has size " +
                           std::to_string(blocks_[i].size()) + ", expected " +
                           std::to_string(dims[i]));
    }
  }
}

double BlockVector::squared_norm() const {
  double s = 0.0;
  for (const auto& b : blocks_) s += b.squaredNorm();
  return s;
}

BlockVector BlockVector::operator-(const BlockVector& other) const {
  if (other.num_blocks() != num_blocks()) throw DimensionError("block count mismatch");
  std::vector<Vector> out;
  out.reserve(blocks_.size());
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].size() != other.blocks_[i].size()) {
      throw DimensionError("block " + std::to_string(i) + " size mismatch");
    }
    out.push_back(blocks_[i] - other.blocks_[i]);
  }
  return BlockVector(std::move(out));
}

}  // namespace iadmm
