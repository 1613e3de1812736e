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

#include <array>
#include <cstdint>
#include <initializer_list>

namespace iadmm {

/// One step of splitmix64: advances `state` and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state);

/// Deterministic child seed of `master` for a path such as (size, dataset, init).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// xoshiro256** with its 256-bit state filled by splitmix64 from a 64-bit seed.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);

  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal by the Box-Muller transform; values come in cached pairs.
  double normal();
  /// True with probability p.
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::array<std::uint64_t, 4> s_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace iadmm
