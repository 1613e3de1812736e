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

#include "iadmm/diagnostics.hpp"
#include "iadmm/engine.hpp"
#include "iadmm/evaluate.hpp"
#include "iadmm/gd_baseline.hpp"
#include "iadmm/logmf.hpp"
#include "iadmm/rng.hpp"

namespace iadmm::logmf {
namespace {

RowMatrix constant(Index m, Index n, double v) { return RowMatrix::Constant(m, n, v); }

RowMatrix random_rows(Xoshiro256& rng, Index m, Index n, double scale = 1.0) {
  RowMatrix M(m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) M(i, j) = scale * rng.normal();
  return M;
}

RowMatrix random_binary(Xoshiro256& rng, Index m, Index n) {
  RowMatrix Y(m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) Y(i, j) = rng.bernoulli(0.5) ? 1.0 : 0.0;
  return Y;
}

LogMfInstance make_instance(RowMatrix Y, Index r, double c, double ld, double lt, double beta = 1.0) {
  LogMfInstance inst;
  inst.Y = std::move(Y);
  inst.r = r;
  inst.c = c;
  inst.lambda_d = ld;
  inst.lambda_t = lt;
  inst.beta = beta;
  return inst;
}

// Direct entrywise G: sum (1 + c y - y) log(1 + e^w) - c y w.
double naive_G(const RowMatrix& W, const RowMatrix& Y, double c) {
  double s = 0.0;
  for (Index i = 0; i < W.rows(); ++i)
    for (Index j = 0; j < W.cols(); ++j) {
      const double y = Y(i, j), w = W(i, j);
      s += (1.0 + c * y - y) * std::log1p(std::exp(w)) - c * y * w;
    }
  return s;
}

TEST(LogMf, GradGValues) {
  const RowMatrix zero = constant(1, 1, 0.0);
  EXPECT_DOUBLE_EQ(grad_G(zero, constant(1, 1, 0.0), 1.0)(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(grad_G(zero, constant(1, 1, 1.0), 1.0)(0, 0), -0.5);
  EXPECT_NEAR(grad_G(constant(1, 1, 50.0), constant(1, 1, 0.0), 1.0)(0, 0), 1.0, 1e-9);
}

TEST(LogMf, LipschitzValues) {
  RowMatrix Y(2, 2);
  Y << 0, 1, 1, 0;
  EXPECT_DOUBLE_EQ(lipschitz_G(Y, 1.0), 0.25);
  EXPECT_DOUBLE_EQ(lipschitz_G(Y, 3.0), 0.75);
  EXPECT_DOUBLE_EQ(lipschitz_G(RowMatrix::Zero(3, 3), 1.0), 0.25);
  EXPECT_THROW(lipschitz_G(Y, -1.0), DomainError);
}

TEST(LogMf, SoftplusSigmoidStable) {
  EXPECT_DOUBLE_EQ(softplus(0.0), std::log(2.0));
  EXPECT_DOUBLE_EQ(softplus(1000.0), 1000.0);
  EXPECT_NEAR(softplus(-1000.0), 0.0, 1e-300);
  EXPECT_NEAR(softplus(-30.0), std::exp(-30.0), 1e-25);
  EXPECT_DOUBLE_EQ(sigmoid(0.0), 0.5);
  EXPECT_DOUBLE_EQ(sigmoid(1000.0), 1.0);
  EXPECT_EQ(sigmoid(-1000.0), 0.0);
  EXPECT_NEAR(sigmoid(-30.0), std::exp(-30.0), 1e-25);
}

TEST(LogMf, GMatchesNaiveSumAndFusedForm) {
  Xoshiro256 rng(3);
  const RowMatrix W = random_rows(rng, 4, 5, 3.0);
  const RowMatrix Y = random_binary(rng, 4, 5);
  for (double c : {1.0, 2.5}) {
    EXPECT_NEAR(G(W, Y, c), naive_G(W, Y, c), 1e-12 * (1 + naive_G(W, Y, c)));
    RowMatrix g;
    const double v = G_with_grad(W, Y, c, g);
    EXPECT_NEAR(v, G(W, Y, c), 1e-12 * (1 + v));
    EXPECT_NEAR((g - grad_G(W, Y, c)).norm(), 0.0, 1e-14);
  }
}

TEST(LogMf, GradientsMatchFiniteDifferences) {
  Xoshiro256 rng(4);
  const RowMatrix Y = random_binary(rng, 3, 4);
  const RowMatrix W = random_rows(rng, 3, 4);
  const auto f = [&](const Vector& w) {
    return G(Eigen::Map<const RowMatrix>(w.data(), 3, 4), Y, 1.0);
  };
  const Vector w = Eigen::Map<const Vector>(W.data(), 12);
  const Vector fd = diag::finite_diff_grad(f, w, 1e-5);
  const RowMatrix g = grad_G(W, Y, 1.0);
  EXPECT_LT((fd - Eigen::Map<const Vector>(g.data(), 12)).norm(), 1e-8);
}

TEST(LogMf, ObjectiveAtZero) {
  EXPECT_NEAR(objective(RowMatrix::Zero(2, 1), RowMatrix::Zero(1, 2), RowMatrix::Zero(2, 2), 1.0, 3.0, 7.0),
              4.0 * std::log(2.0), 1e-15);
  EXPECT_NEAR(objective(RowMatrix::Zero(2, 1), RowMatrix::Zero(1, 2), RowMatrix::Ones(2, 2), 1.0, 3.0, 7.0),
              4.0 * std::log(2.0), 1e-15);
  RowMatrix U(3, 2), V(2, 4);
  U << 1, 0, 2, 0, -1, 0;
  V << 0, 0, 0, 0, 5, 1, 2, 3;  // UV = 0
  EXPECT_NEAR(objective(U, V, RowMatrix::Zero(3, 4), 1.0, 0.0, 0.0), 12.0 * std::log(2.0), 1e-13);
}

TEST(LogMf, GenerateInstance) {
  const SparseBinaryMatrix Y = generate_instance(200, 200, 0.1, 12345);
  EXPECT_GE(Y.nnz(), 3400);
  EXPECT_LE(Y.nnz(), 4600);
  EXPECT_EQ(generate_instance(200, 200, 0.1, 12345).entries, Y.entries);
  EXPECT_NE(generate_instance(200, 200, 0.1, 12346).entries, Y.entries);
  EXPECT_EQ(generate_instance(5, 6, 0.0, 1).nnz(), 0);
  EXPECT_EQ(generate_instance(5, 6, 1.0, 1).nnz(), 30);
  EXPECT_THROW(generate_instance(5, 6, 1.5, 1), DomainError);
}

TEST(LogMf, InitialFactorsVariance) {
  const auto [U, V] = initial_factors(200, 150, 50, 9);
  EXPECT_EQ(U.rows(), 200);
  EXPECT_EQ(U.cols(), 50);
  EXPECT_EQ(V.rows(), 50);
  EXPECT_EQ(V.cols(), 150);
  const double var_u = U.squaredNorm() / static_cast<double>(U.size());
  EXPECT_NEAR(var_u, 1.0 / 50.0, 0.002);
  const auto [U2, V2] = initial_factors(200, 150, 50, 9);
  EXPECT_EQ(U, U2);
  EXPECT_EQ(V, V2);
}

TEST(LogMf, ValidateRejectsBadInstances) {
  EXPECT_NO_THROW(make_instance(RowMatrix::Zero(2, 2), 1, 1.0, 0.0, 0.0).validate());
  RowMatrix Y = RowMatrix::Zero(2, 2);
  Y(0, 0) = 0.5;
  EXPECT_THROW(make_instance(Y, 1, 1.0, 0.0, 0.0).validate(), DomainError);
  EXPECT_THROW(make_instance(RowMatrix::Zero(2, 2), 0, 1.0, 0.0, 0.0).validate(), DomainError);
  EXPECT_THROW(make_instance(RowMatrix::Zero(2, 2), 1, -1.0, 0.0, 0.0).validate(), DomainError);
  EXPECT_THROW(make_instance(RowMatrix::Zero(2, 2), 1, 1.0, -0.1, 0.0).validate(), DomainError);
  EXPECT_THROW(make_instance(RowMatrix::Zero(2, 2), 1, 1.0, 0.0, 0.0, 0.0).validate(), DomainError);
}

TEST(LogMf, UpdateUExamples) {
  const LogMfInstance inst = make_instance(RowMatrix::Zero(1, 1), 1, 1.0, 1.0, 1.0);
  LogMfState s{constant(1, 1, 0.0), constant(1, 1, 1.0), constant(1, 1, 0.0), constant(1, 1, 1.0)};
  EXPECT_NEAR(update_U(s, inst, constant(1, 1, 0.0))(0, 0), -0.5, 1e-15);

  Xoshiro256 rng(5);
  const LogMfInstance big = make_instance(random_binary(rng, 3, 4), 2, 1.0, 0.3, 0.2, 1.7);
  const RowMatrix U_ex = random_rows(rng, 3, 2);
  const RowMatrix V = random_rows(rng, 2, 4);
  LogMfState t{random_rows(rng, 3, 2), V, U_ex * V, RowMatrix::Zero(3, 4)};
  const double nv = gram_norm_rows(V);
  EXPECT_NEAR((update_U(t, big, U_ex) - (1.7 * nv / (1.7 * nv + 0.3)) * U_ex).norm(), 0.0, 1e-13);

  // lambda_d = 0
  LogMfInstance z = big;
  z.lambda_d = 0.0;
  t.W = random_rows(rng, 3, 4);
  t.omega = random_rows(rng, 3, 4);
  const RowMatrix expected =
      U_ex - (t.omega + 1.7 * (U_ex * V - t.W)) * V.transpose() / (1.7 * nv);
  EXPECT_NEAR((update_U(t, z, U_ex) - expected).norm(), 0.0, 1e-12);
}

TEST(LogMf, UpdateVExamples) {
  const LogMfInstance inst = make_instance(RowMatrix::Zero(1, 1), 1, 1.0, 1.0, 1.0);
  LogMfState s{constant(1, 1, 1.0), constant(1, 1, 0.0), constant(1, 1, 0.0), constant(1, 1, 1.0)};
  EXPECT_NEAR(update_V(s, inst, constant(1, 1, 0.0))(0, 0), -0.5, 1e-15);

  Xoshiro256 rng(6);
  const LogMfInstance big = make_instance(random_binary(rng, 3, 4), 2, 1.0, 0.3, 0.2, 1.7);
  const RowMatrix U = random_rows(rng, 3, 2);
  const RowMatrix V_ex = random_rows(rng, 2, 4);
  LogMfState t{U, random_rows(rng, 2, 4), U * V_ex, RowMatrix::Zero(3, 4)};
  const double nu = gram_norm_cols(U);
  EXPECT_NEAR((update_V(t, big, V_ex) - (1.7 * nu / (1.7 * nu + 0.2)) * V_ex).norm(), 0.0, 1e-13);
}

TEST(LogMf, UpdateWScalar) {
  const LogMfInstance inst = make_instance(RowMatrix::Zero(1, 1), 1, 1.0, 0.25, 0.25);
  LogMfState s{constant(1, 1, 0.0), constant(1, 1, 0.0), constant(1, 1, 0.0), constant(1, 1, 0.0)};
  EXPECT_NEAR(update_W(s, inst)(0, 0), -0.4, 1e-15);
}

TEST(LogMf, GramNorms) {
  Xoshiro256 rng(7);
  const RowMatrix V = random_rows(rng, 3, 5);
  const Eigen::MatrixXd VVt = V * V.transpose();
  EXPECT_NEAR(gram_norm_rows(V), Eigen::JacobiSVD<Eigen::MatrixXd>(VVt).singularValues()[0], 1e-12);
  const RowMatrix U = random_rows(rng, 6, 3);
  EXPECT_NEAR(gram_norm_cols(U), std::pow(Eigen::JacobiSVD<Eigen::MatrixXd>(U).singularValues()[0], 2), 1e-12);
}

TEST(LogMf, GdStepScalar) {
  const auto [U, V] = gd_baseline_step(constant(1, 1, 1.0), constant(1, 1, 1.0), RowMatrix::Zero(1, 1),
                                       1.0, 0.25, 0.25);
  EXPECT_NEAR(U(0, 0), 1.0 - 2.0 * (sigmoid(1.0) + 0.25), 1e-14);
  EXPECT_NEAR(U(0, 0), -0.9622, 1e-4);
  // V uses the updated U: step 1/(L_G U^2 + lambda_t).
  const double u = U(0, 0);
  const double gv = sigmoid(u) * u + 0.25;
  EXPECT_NEAR(V(0, 0), 1.0 - gv / (0.25 * u * u + 0.25), 1e-14);
}

TEST(LogMf, GdStepFixedAtStationaryPoint) {
  const RowMatrix Y = RowMatrix::Zero(2, 3);
  const auto [U, V] = gd_baseline_step(RowMatrix::Zero(2, 2), RowMatrix::Zero(2, 3), Y, 1.0, 0.5, 0.5);
  EXPECT_EQ(U.norm(), 0.0);
  EXPECT_EQ(V.norm(), 0.0);
}

TEST(LogMf, GdRunDecreasesObjective) {
  const LogMfInstance inst = make_instance(generate_instance(20, 15, 0.2, 3).to_dense(), 4, 1.0, 0.25, 0.25);
  const auto [U0, V0] = initial_factors(20, 15, 4, 4);
  const GdResult r = run_gd(inst, U0, V0, GdOptions{50, std::nullopt});
  ASSERT_EQ(r.trace.size(), 51u);
  for (std::size_t k = 1; k < r.trace.size(); ++k) {
    EXPECT_LE(r.trace[k].objective, r.trace[k - 1].objective + 1e-12);
    EXPECT_EQ(r.trace[k].feas, 0.0);
  }
  EXPECT_NEAR(r.trace.back().objective, objective(r.U, r.V, inst.Y, 1.0, 0.25, 0.25), 1e-9);
}

TEST(LogMfProblem, PackingAndOracles) {
  Xoshiro256 rng(8);
  const LogMfProblem p(make_instance(random_binary(rng, 3, 4), 2, 1.0, 0.3, 0.2, 1.5));
  const RowMatrix U = random_rows(rng, 3, 2);
  const RowMatrix V = random_rows(rng, 2, 4);
  const BlockVector x = p.pack(U, V);
  EXPECT_EQ(p.unpack_U(x), U);
  EXPECT_EQ(p.unpack_V(x), V);
  const RowMatrix W = U * V;
  EXPECT_EQ(p.unpack_W(p.pack_W(W)), W);
  EXPECT_NEAR((p.unpack_W(p.h(x)) - W).norm(), 0.0, 1e-14);
  // The trace objective at W = UV equals the objective.
  const Vector y = p.pack_W(W);
  EXPECT_NEAR(p.tracked_objective(x, y), objective(U, V, p.instance().Y, 1.0, 0.3, 0.2), 1e-12);
  EXPECT_NEAR(eval_objective(p, x, y), objective(U, V, p.instance().Y, 1.0, 0.3, 0.2), 1e-12);
  EXPECT_DOUBLE_EQ(p.lipschitz_h2_block(0, x), gram_norm_rows(V));
  EXPECT_DOUBLE_EQ(p.lipschitz_h2_block(1, x), gram_norm_cols(U));
  EXPECT_DOUBLE_EQ(p.lipschitz_F_block(0, x), 0.3);
}

TEST(LogMfProblem, JacobiansAreAdjoint) {
  Xoshiro256 rng(9);
  const LogMfProblem p(make_instance(random_binary(rng, 3, 4), 2, 1.0, 0.3, 0.2));
  const BlockVector x = p.pack(random_rows(rng, 3, 2), random_rows(rng, 2, 4));
  for (std::size_t i = 0; i < 2; ++i) {
    Vector d(x.block(i).size());
    for (Index j = 0; j < d.size(); ++j) d[j] = rng.normal();
    Vector w(12);
    for (Index j = 0; j < 12; ++j) w[j] = rng.normal();
    EXPECT_NEAR(p.jac_h_block_apply(i, x, d).dot(w), d.dot(p.jac_h_block_transpose(i, x, w)), 1e-12);
  }
}

TEST(LogMfProblem, CoupledProxMatchesDenseSolve) {
  Xoshiro256 rng(10);
  const LogMfProblem p(make_instance(random_binary(rng, 3, 4), 2, 1.0, 0.3, 0.2));
  const BlockVector x = p.pack(random_rows(rng, 3, 2), random_rows(rng, 2, 4));
  Vector v(12);
  for (Index j = 0; j < 12; ++j) v[j] = rng.normal();
  for (std::size_t i = 0; i < 2; ++i) {
    Vector center(x.block(i).size());
    for (Index j = 0; j < center.size(); ++j) center[j] = rng.normal();
    const Vector fast = p.coupled_prox(i, x, v, 1.3, center, 0.7);
    const Vector dense = p.Problem::coupled_prox(i, x, v, 1.3, center, 0.7);
    EXPECT_NEAR((fast - dense).norm(), 0.0, 1e-10 * (1 + dense.norm()));
  }
}

TEST(LogMfProblem, GenericIterationMatchesClosedForms) {
  Xoshiro256 rng(11);
  const LogMfProblem p(make_instance(random_binary(rng, 3, 3), 2, 1.0, 0.25, 0.25));
  SolverConfig cfg;
  cfg.tau1 = cfg.tau2 = 0.5;
  cfg.B2 = 0.9;
  cfg.max_iters = 1;
  const SolverContext ctx{p, cfg, validate_config(cfg, p)};
  const RowMatrix U = random_rows(rng, 3, 2), V = random_rows(rng, 2, 3);
  const RowMatrix W = random_rows(rng, 3, 3), omega = random_rows(rng, 3, 3);
  IterateState s = make_initial_state(p, {p.pack(U, V), p.pack_W(W), p.pack_W(omega)});

  const BlockUpdate bu = update_block(0, s, ctx);
  LogMfState ls{U, V, W, omega};
  const RowMatrix U1 = update_U(ls, p.instance(), U);
  EXPECT_NEAR((p.unpack_U(BlockVector({bu.x_new, s.x.block(1)})) - U1).norm(), 0.0, 1e-12);

  s.x.block(0) = bu.x_new;
  ls.U = U1;
  const BlockUpdate bv = update_block(1, s, ctx);
  const RowMatrix V1 = update_V(ls, p.instance(), V);
  EXPECT_NEAR((p.unpack_V(BlockVector({s.x.block(0), bv.x_new})) - V1).norm(), 0.0, 1e-12);

  s.x.block(1) = bv.x_new;
  ls.V = V1;
  const YUpdate yu = update_y(s, ctx);
  EXPECT_NEAR((p.unpack_W(yu.y_new) - update_W(ls, p.instance())).norm(), 0.0, 1e-12);
}

}  // namespace
}  // namespace iadmm::logmf
