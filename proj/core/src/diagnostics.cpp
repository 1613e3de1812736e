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


#include "iadmm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "iadmm/errors.hpp"
#include "json.hpp"

namespace iadmm::diag {

namespace {

using nlohmann::json;

constexpr double kMaxGridPoints = 1e7;
constexpr int kRefineRounds = 30;

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json report_json(const CheckReport& r) {
  return json{{"name", r.name},
              {"status", std::string(to_string(r.status))},
              {"passed", r.passed},
              {"worst_violation", number_or_null(r.worst_violation)},
              {"location", {{"iteration", r.iteration}, {"block", r.block}}},
              {"tolerance", r.tolerance},
              {"detail", r.detail}};
}

CheckReport finish(CheckReport r) {
  if (std::isnan(r.worst_violation)) {
    r.status = CheckStatus::kInconclusive;
    r.passed = false;
    return r;
  }
  r.passed = r.worst_violation <= r.tolerance;
  r.status = r.passed ? CheckStatus::kPassed : CheckStatus::kFailed;
  return r;
}

}  // namespace

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPassed: return "passed";
    case CheckStatus::kFailed: return "failed";
    case CheckStatus::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string to_json(const CheckReport& report) { return report_json(report).dump(2); }

std::string to_json(const std::vector<CheckReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  return arr.dump(2);
}

Vector finite_diff_grad(const ScalarFunction& f, const Vector& x, double h) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  Vector g(x.size());
  Vector probe = x;
  for (Index j = 0; j < x.size(); ++j) {
    const double xj = x[j];
    probe[j] = xj + h;
    const double fp = f(probe);
    probe[j] = xj - h;
    const double fm = f(probe);
    probe[j] = xj;
    g[j] = (fp - fm) / (2.0 * h);
  }
  return g;
}

Vector brute_force_argmin(const ScalarFunction& f, const Box& box, long points_per_dim) {
  const Index d = box.lower.size();
  if (box.upper.size() != d) throw DomainError("box bounds have different lengths");
  if (d == 0) throw DomainError("box has no coordinates");
  if ((box.lower.array() > box.upper.array()).any()) throw DomainError("box is empty");
  if (points_per_dim < 1) throw DomainError("points_per_dim must be >= 1");
  if (std::pow(static_cast<double>(points_per_dim), static_cast<double>(d)) > kMaxGridPoints) {
    throw DomainError("grid larger than 1e7 points");
  }

  const Vector spacing = points_per_dim > 1
                             ? Vector((box.upper - box.lower) / static_cast<double>(points_per_dim - 1))
                             : Vector(Vector::Zero(d));
  const auto grid_point = [&](const std::vector<long>& idx) {
    Vector p(d);
    for (Index j = 0; j < d; ++j) {
      p[j] = points_per_dim > 1 ? box.lower[j] + static_cast<double>(idx[j]) * spacing[j]
                                : 0.5 * (box.lower[j] + box.upper[j]);
    }
    return p;
  };

  std::vector<long> idx(d, 0);
  Vector best = grid_point(idx);
  double best_val = f(best);
  for (;;) {
    Index j = 0;
    while (j < d && ++idx[j] == points_per_dim) idx[j++] = 0;
    if (j == d) break;
    Vector p = grid_point(idx);
    const double v = f(p);
    if (v < best_val) {
      best_val = v;
      best = std::move(p);
    }
  }

  Vector step = spacing;
  for (int round = 0; round < kRefineRounds; ++round) {
    step /= 2.0;
    bool improved = true;
    int sweeps = 0;
    while (improved && sweeps++ < 10000) {
      improved = false;
      for (Index j = 0; j < d; ++j) {
        for (double sign : {-1.0, 1.0}) {
          Vector p = best;
          p[j] = std::clamp(best[j] + sign * step[j], box.lower[j], box.upper[j]);
          const double v = f(p);
          if (v < best_val) {
            best_val = v;
            best = std::move(p);
            improved = true;
          }
        }
      }
    }
  }
  return best;
}

CheckReport check_descent(const std::vector<TraceRecord>& trace, DescentKind kind, double tol) {
  CheckReport r;
  r.tolerance = tol;
  if (kind == DescentKind::kLyapunov) {
    r.name = "lyapunov_descent";
    const TraceRecord* prev = nullptr;
    long pairs = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (const TraceRecord& rec : trace) {
      if (rec.k < 1 || !std::isfinite(rec.lyapunov)) continue;
      if (prev != nullptr) {
        const double v = (rec.lyapunov - prev->lyapunov) / (1.0 + std::abs(prev->lyapunov));
        ++pairs;
        if (v > worst) {
          worst = v;
          r.iteration = rec.k;
        }
      }
      prev = &rec;
    }
    if (pairs == 0) throw SchemaError("lyapunov check needs two records with a Lyapunov value");
    r.worst_violation = std::max(worst, 0.0);
    if (worst <= 0.0) r.iteration = -1;
    return finish(r);
  }

  r.name = "y_sufficient_decrease";
  long used = 0;
  double worst = 0.0;
  for (const TraceRecord& rec : trace) {
    if (rec.k < 1) continue;
    if (!std::isfinite(rec.lagr_before_y) || !std::isfinite(rec.lagr_after_y) ||
        !std::isfinite(rec.y_decrease_margin)) {
      throw SchemaError("y decrease check needs traces recorded at check level full");
    }
    ++used;
    const double v = (rec.lagr_after_y + rec.y_decrease_margin - rec.lagr_before_y) /
                     (1.0 + std::abs(rec.lagr_before_y));
    if (v > worst) {
      worst = v;
      r.iteration = rec.k;
    }
  }
  if (used == 0 || trace.size() < 2) throw SchemaError("y decrease check needs two records");
  r.worst_violation = worst;
  return finish(r);
}

CheckReport check_lower_bound(const std::vector<TraceRecord>& trace, double nu, double tol) {
  CheckReport r;
  r.name = "lyapunov_lower_bound";
  r.tolerance = tol;
  long used = 0;
  double worst = 0.0;
  for (const TraceRecord& rec : trace) {
    if (rec.k < 1 || !std::isfinite(rec.lyapunov)) continue;
    ++used;
    const double v = nu - rec.lyapunov;
    if (v > worst) {
      worst = v;
      r.iteration = rec.k;
    }
  }
  if (used == 0) throw SchemaError("lower-bound check needs records with a Lyapunov value");
  r.worst_violation = worst;
  return finish(r);
}

CheckReport check_nsdp(const std::vector<TraceRecord>& trace, double tol) {
  CheckReport r;
  r.name = "nsdp";
  r.tolerance = tol;
  long used = 0;
  double worst = 0.0;
  for (const TraceRecord& rec : trace) {
    if (rec.k < 1) continue;
    if (std::isnan(rec.nsdp_violation)) {
      throw SchemaError("NSDP check needs traces recorded at check level full");
    }
    ++used;
    if (rec.nsdp_violation > worst) {
      worst = rec.nsdp_violation;
      r.iteration = rec.k;
    }
  }
  if (used == 0) throw SchemaError("NSDP check needs at least one iteration");
  r.worst_violation = worst;
  return finish(r);
}

CheckReport check_residual_consistency(const std::vector<TraceRecord>& trace, const SolverConfig& cfg,
                                    double tol) {
  CheckReport r;
  r.name = "residual_consistency";
  r.tolerance = tol;
  if (trace.empty()) throw SchemaError("empty trace");
  const TraceRecord& last = trace.back();
  r.iteration = last.k;
  const bool converged = cfg.tolerance > 0.0 && std::isfinite(last.criticality) &&
                         last.criticality <= cfg.tolerance;
  if (!converged || !std::isfinite(last.omega_norm) || !std::isfinite(last.feas)) {
    r.detail = "run did not reach the stationarity tolerance";
    return finish(r);
  }
  const double factor = (1.0 - cfg.tau1) / (cfg.tau2 * cfg.beta);
  const double gap = std::abs(last.feas - factor * last.omega_norm);
  r.worst_violation = gap / (1.0 + factor * last.omega_norm);
  r.detail = "feas=" + std::to_string(last.feas) +
             " predicted=" + std::to_string(factor * last.omega_norm);
  return finish(r);
}

}  // namespace iadmm::diag
