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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "iadmm/block_vector.hpp"

namespace iadmm {

/// 0/1 matrix stored by its nonzero coordinates in row-major order.
struct SparseBinaryMatrix {
  Index rows = 0;
  Index cols = 0;
  std::vector<std::pair<Index, Index>> entries;

  Index nnz() const { return static_cast<Index>(entries.size()); }
  double density() const;
  RowMatrix to_dense() const;
  /// Throws DomainError if any entry is not exactly 0 or 1.
  static SparseBinaryMatrix from_dense(const RowMatrix& dense);
};

/// Shortest round-trip decimal for a double (17 significant digits).
std::string format_double(double v);

// Dense text format: "rows cols" then row-major values, one row per line.
void write_dense(std::ostream& out, const RowMatrix& m);
RowMatrix read_dense(std::istream& in);

// Sparse binary text format: "rows cols nnz" then one "i j" (0-based) per nonzero.
void write_sparse_binary(std::ostream& out, const SparseBinaryMatrix& m);
SparseBinaryMatrix read_sparse_binary(std::istream& in);

void save_dense(const std::filesystem::path& path, const RowMatrix& m);
RowMatrix load_dense(const std::filesystem::path& path);
void save_sparse_binary(const std::filesystem::path& path, const SparseBinaryMatrix& m);
SparseBinaryMatrix load_sparse_binary(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over path.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace iadmm
