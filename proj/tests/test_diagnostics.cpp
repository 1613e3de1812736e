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


#include <cmath>

#include <gtest/gtest.h>
#include "json.hpp"

#include "iadmm/diagnostics.hpp"
#include "iadmm/engine.hpp"
#include "iadmm/logmf.hpp"
#include "iadmm/rng.hpp"

namespace iadmm::diag {
namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

std::vector<TraceRecord> lyapunov_trace(std::initializer_list<double> values) {
  std::vector<TraceRecord> t(1);
  t[0].k = 0;
  long k = 1;
  for (double v : values) {
    TraceRecord r;
    r.k = k++;
    r.lyapunov = v;
    t.push_back(r);
  }
  return t;
}

TEST(FiniteDiff, QuadraticAndConstant) {
  const auto sq = [](const Vector& x) { return x[0] * x[0]; };
  EXPECT_NEAR(finite_diff_grad(sq, vec({1.0}), 1e-6)[0], 2.0, 1e-6);
  const auto c = [](const Vector&) { return 3.0; };
  EXPECT_EQ(finite_diff_grad(c, vec({1.0, 2.0, 3.0})).norm(), 0.0);
  EXPECT_THROW(finite_diff_grad(sq, vec({1.0}), 0.0), DomainError);
}

TEST(FiniteDiff, MatchesLogMfGradient) {
  Xoshiro256 rng(1);
  RowMatrix W(2, 2), Y(2, 2);
  for (Index i = 0; i < 4; ++i) {
    W.data()[i] = rng.normal();
    Y.data()[i] = rng.bernoulli(0.5) ? 1.0 : 0.0;
  }
  const auto f = [&](const Vector& w) {
    return logmf::G(Eigen::Map<const RowMatrix>(w.data(), 2, 2), Y, 1.0);
  };
  const Vector fd = finite_diff_grad(f, Eigen::Map<const Vector>(W.data(), 4));
  const RowMatrix g = logmf::grad_G(W, Y, 1.0);
  EXPECT_LT((fd - Eigen::Map<const Vector>(g.data(), 4)).lpNorm<Eigen::Infinity>(), 1e-5);
}

TEST(BruteForce, ScalarExamples) {
  const Box box{vec({-1.0}), vec({1.0})};
  const auto q = [](const Vector& x) { return (x[0] - 0.3) * (x[0] - 0.3); };
  EXPECT_NEAR(brute_force_argmin(q, box, 1001)[0], 0.3, 1e-6);
  const auto a = [](const Vector& x) { return std::abs(x[0]); };
  EXPECT_NEAR(brute_force_argmin(a, box, 1001)[0], 0.0, 2e-3);
  // Off-grid minimizer: refinement narrows the grid error.
  const auto off = [](const Vector& x) { return (x[0] - 0.1234) * (x[0] - 0.1234); };
  EXPECT_NEAR(brute_force_argmin(off, box, 11)[0], 0.1234, 0.2 / 8.0);
}

TEST(BruteForce, LogMfScalarUSubproblem) {
  // U-subproblem with lambda_d = beta = V = omega = 1, W = U_ex = 0:
  //   (lambda_d/2) u^2 + u * (omega + beta(U_ex V - W)) V + (beta ||VV^T||/2)(u - U_ex)^2
  const auto phi = [](const Vector& u) { return 0.5 * u[0] * u[0] + u[0] + 0.5 * u[0] * u[0]; };
  EXPECT_NEAR(brute_force_argmin(phi, {vec({-2.0}), vec({2.0})}, 401)[0], -0.5, 1e-4);
}

TEST(BruteForce, TwoDimensionsAndErrors) {
  const auto f = [](const Vector& x) {
    return (x[0] - 0.25) * (x[0] - 0.25) + 2.0 * (x[1] + 0.6) * (x[1] + 0.6) + 0.5 * x[0] * x[1];
  };
  // Minimizer of the quadratic: [2 0.5; 0.5 4] x = [0.5; -2.4].
  const Eigen::Matrix2d H{{2.0, 0.5}, {0.5, 4.0}};
  const Eigen::Vector2d xs = H.ldlt().solve(Eigen::Vector2d(0.5, -2.4));
  const Vector got = brute_force_argmin(f, {vec({-1.0, -1.0}), vec({1.0, 1.0})}, 201);
  // Coordinate search on a coupled quadratic stops within the final step (spacing / 8).
  EXPECT_NEAR(got[0], xs[0], 0.01 / 8.0);
  EXPECT_NEAR(got[1], xs[1], 0.01 / 8.0);
  EXPECT_THROW(brute_force_argmin(f, {vec({1.0}), vec({-1.0})}, 10), DomainError);
  EXPECT_THROW(brute_force_argmin(f, {vec({0.0}), vec({1.0, 2.0})}, 10), DomainError);
  EXPECT_THROW(brute_force_argmin(f, {vec({0, 0, 0, 0}), vec({1, 1, 1, 1})}, 100), DomainError);
}

TEST(CheckDescent, Examples) {
  const CheckReport up = check_descent(lyapunov_trace({0.0, 1.0, 1.0}), DescentKind::kLyapunov, 1e-8);
  EXPECT_FALSE(up.passed);
  EXPECT_EQ(up.status, CheckStatus::kFailed);
  EXPECT_NEAR(up.worst_violation, 1.0, 1e-12);
  EXPECT_EQ(up.iteration, 2);

  const CheckReport flat = check_descent(lyapunov_trace({5.0, 5.0, 5.0}), DescentKind::kLyapunov, 1e-8);
  EXPECT_TRUE(flat.passed);
  EXPECT_EQ(flat.worst_violation, 0.0);

  EXPECT_THROW(check_descent(lyapunov_trace({1.0}), DescentKind::kLyapunov, 1e-8), SchemaError);
  EXPECT_THROW(check_descent(lyapunov_trace({1.0, 0.5}), DescentKind::kYSufficientDecrease, 1e-8),
               SchemaError);
}

TEST(CheckDescent, YSufficientDecrease) {
  std::vector<TraceRecord> t = lyapunov_trace({1.0, 0.5});
  for (auto& r : t) {
    r.lagr_before_y = 2.0;
    r.lagr_after_y = 1.5;
    r.y_decrease_margin = 0.25;
  }
  EXPECT_TRUE(check_descent(t, DescentKind::kYSufficientDecrease, 1e-12).passed);
  t[2].y_decrease_margin = 1.0;
  const CheckReport r = check_descent(t, DescentKind::kYSufficientDecrease, 1e-12);
  EXPECT_FALSE(r.passed);
  EXPECT_NEAR(r.worst_violation, 0.5 / 3.0, 1e-12);
}

TEST(CheckLowerBound, Examples) {
  EXPECT_TRUE(check_lower_bound(lyapunov_trace({3.0, 2.0, 1.0}), 0.0, 1e-6).passed);
  const CheckReport r = check_lower_bound(lyapunov_trace({3.0, -0.5}), 0.0, 1e-6);
  EXPECT_FALSE(r.passed);
  EXPECT_DOUBLE_EQ(r.worst_violation, 0.5);
}

TEST(CheckNsdp, NeedsFullLevel) {
  std::vector<TraceRecord> t = lyapunov_trace({1.0, 0.5});
  EXPECT_THROW(check_nsdp(t, 1e-8), SchemaError);
  for (auto& r : t) r.nsdp_violation = -0.1;
  EXPECT_TRUE(check_nsdp(t, 1e-8).passed);
  t[1].nsdp_violation = 1e-3;
  EXPECT_FALSE(check_nsdp(t, 1e-8).passed);
}

TEST(ResidualConsistency, ConvergedAndInconclusive) {
  SolverConfig cfg;
  cfg.tau1 = 1.0;
  cfg.tau2 = 1.0;
  cfg.tolerance = 1e-6;
  std::vector<TraceRecord> t(1);
  t[0].k = 10;
  t[0].feas = 2e-7;
  t[0].omega_norm = 3.0;
  t[0].criticality = 5e-7;
  EXPECT_TRUE(check_residual_consistency(t, cfg, 1e-6).passed);
  t[0].feas = 2e-6;
  EXPECT_FALSE(check_residual_consistency(t, cfg, 1e-6).passed);

  cfg.tau1 = cfg.tau2 = 0.5;
  cfg.beta = 1.0;
  t[0].feas = 3.0 + 0.01;  // predicted (0.5/0.5) * 3 = 3
  EXPECT_TRUE(check_residual_consistency(t, cfg, 0.05).passed);
  t[0].feas = 4.0;
  EXPECT_FALSE(check_residual_consistency(t, cfg, 0.05).passed);

  t[0].criticality = 1.0;
  const CheckReport r = check_residual_consistency(t, cfg, 0.05);
  EXPECT_EQ(r.status, CheckStatus::kInconclusive);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(std::isnan(r.worst_violation));
}

TEST(Report, JsonShape) {
  CheckReport r;
  r.name = "lyapunov_descent";
  r.status = CheckStatus::kFailed;
  r.worst_violation = 0.25;
  r.iteration = 7;
  r.block = 1;
  r.tolerance = 1e-8;
  const auto j = nlohmann::json::parse(to_json(r));
  EXPECT_EQ(j["name"], "lyapunov_descent");
  EXPECT_EQ(j["status"], "failed");
  EXPECT_EQ(j["passed"], false);
  EXPECT_EQ(j["worst_violation"], 0.25);
  EXPECT_EQ(j["location"]["iteration"], 7);
  EXPECT_EQ(j["location"]["block"], 1);

  CheckReport inc;
  inc.name = "x";
  const auto arr = nlohmann::json::parse(to_json(std::vector<CheckReport>{r, inc}));
  ASSERT_EQ(arr.size(), 2u);
  EXPECT_TRUE(arr[1]["worst_violation"].is_null());
  EXPECT_EQ(arr[1]["status"], "inconclusive");
}

}  // namespace
}  // namespace iadmm::diag
