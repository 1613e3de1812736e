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
#include "iadmm/matrix_io.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "iadmm/errors.hpp"

namespace iadmm {

double SparseBinaryMatrix::density() const {
  if (rows == 0 || cols == 0) return 0.0;
  return static_cast<double>(nnz()) / (static_cast<double>(rows) * static_cast<double>(cols));
}

RowMatrix SparseBinaryMatrix::to_dense() const {
  RowMatrix d = RowMatrix::Zero(rows, cols);
  for (const auto& [i, j] : entries) d(i, j) = 1.0;
  return d;
}

SparseBinaryMatrix SparseBinaryMatrix::from_dense(const RowMatrix& dense) {
  SparseBinaryMatrix s;
  s.rows = dense.rows();
  s.cols = dense.cols();
  for (Index i = 0; i < dense.rows(); ++i) {
    for (Index j = 0; j < dense.cols(); ++j) {
      const double v = dense(i, j);
      if (v == 1.0) {
        s.entries.emplace_back(i, j);
      } else if (v != 0.0) {
        throw DomainError("binary matrix entries must be 0 or 1");
      }
    }
  }
  return s;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_dense(std::ostream& out, const RowMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

namespace {

template <typename T>
T read_value(std::istream& in, const char* what) {
  T v{};
  if (!(in >> v)) throw SchemaError(std::string("matrix file: cannot read ") + what);
  return v;
}

double read_double_token(std::istream& in) {
  std::string tok;
  if (!(in >> tok)) throw SchemaError("dense matrix file: too few values");
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size()) throw SchemaError("dense matrix file: bad value '" + tok + "'");
  return v;
}

void expect_eof(std::istream& in, const char* what) {
  std::string extra;
  if (in >> extra) throw SchemaError(std::string(what) + ": trailing data '" + extra + "'");
}

}  // namespace

RowMatrix read_dense(std::istream& in) {
  const auto rows = read_value<long long>(in, "row count");
  const auto cols = read_value<long long>(in, "column count");
  if (rows < 0 || cols < 0) throw SchemaError("dense matrix file: negative dimension");
  RowMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = read_double_token(in);
  }
  expect_eof(in, "dense matrix file");
  return m;
}

void write_sparse_binary(std::ostream& out, const SparseBinaryMatrix& m) {
  out << m.rows << ' ' << m.cols << ' ' << m.nnz() << '\n';
  for (const auto& [i, j] : m.entries) out << i << ' ' << j << '\n';
}

SparseBinaryMatrix read_sparse_binary(std::istream& in) {
  SparseBinaryMatrix m;
  m.rows = read_value<long long>(in, "row count");
  m.cols = read_value<long long>(in, "column count");
  const auto nnz = read_value<long long>(in, "nonzero count");
  if (m.rows < 0 || m.cols < 0 || nnz < 0) throw SchemaError("sparse matrix file: negative count");
  m.entries.reserve(static_cast<std::size_t>(nnz));
  for (long long k = 0; k < nnz; ++k) {
    const auto i = read_value<long long>(in, "row index");
    const auto j = read_value<long long>(in, "column index");
    if (i < 0 || i >= m.rows || j < 0 || j >= m.cols) {
      throw SchemaError("sparse matrix file: index out of range");
    }
    m.entries.emplace_back(i, j);
  }
  expect_eof(in, "sparse matrix file");
  std::sort(m.entries.begin(), m.entries.end());
  if (std::adjacent_find(m.entries.begin(), m.entries.end()) != m.entries.end()) {
    throw SchemaError("sparse matrix file: duplicate entry");
  }
  return m;
}

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

}  // namespace

void save_dense(const std::filesystem::path& path, const RowMatrix& m) {
  std::ostringstream os;
  write_dense(os, m);
  write_file_atomic(path, os.str());
}

RowMatrix load_dense(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_dense(in);
}

void save_sparse_binary(const std::filesystem::path& path, const SparseBinaryMatrix& m) {
  std::ostringstream os;
  write_sparse_binary(os, m);
  write_file_atomic(path, os.str());
}

SparseBinaryMatrix load_sparse_binary(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_sparse_binary(in);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  static std::atomic<unsigned long> counter{0};
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename onto " + path.string());
  }
}

}  // namespace iadmm
