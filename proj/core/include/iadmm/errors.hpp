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

#include <stdexcept>
#include <string>

namespace iadmm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Array shapes disagree with what the problem declares.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A solver parameter or problem declaration is unusable.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A linear system or oracle produced a non-finite or singular result.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// An operation was requested in a state where it is undefined.
class StateError : public Error {
 public:
  using Error::Error;
};

/// A runtime-verified algebraic identity failed during a run.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Stored data (trace, config, matrix file) does not follow its schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Input outside the domain of a pure function.
class DomainError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace iadmm
