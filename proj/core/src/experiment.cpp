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


#include "iadmm/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstring>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "iadmm/errors.hpp"
#include "iadmm/gd_baseline.hpp"
#include "iadmm/logmf.hpp"
#include "iadmm/matrix_io.hpp"
#include "iadmm/rng.hpp"
#include "iadmm/trace_io.hpp"
#include "json.hpp"

#ifndef IADMM_VERSION
#define IADMM_VERSION "0.0.0"
#endif

namespace iadmm::bench {

namespace {

using nlohmann::json;

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw SchemaError("bad number '" + std::string(s) + "' in algorithm token");
  }
  return v;
}

std::vector<std::string> split(std::string_view s, std::string_view sep) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      parts.emplace_back(s.substr(pos));
      return parts;
    }
    parts.emplace_back(s.substr(pos, next - pos));
    pos = next + sep.size();
  }
}

// FNV-1a over the raw bytes of a matrix and its shape.
std::uint64_t hash_matrix(const RowMatrix& m, std::uint64_t h = 1469598103934665603ULL) {
  const auto mix = [&h](const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 1099511628211ULL;
    }
  };
  const std::int64_t shape[2] = {static_cast<std::int64_t>(m.rows()),
                                 static_cast<std::int64_t>(m.cols())};
  mix(shape, sizeof(shape));
  mix(m.data(), sizeof(double) * static_cast<std::size_t>(m.size()));
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// --- config parsing -------------------------------------------------------

[[noreturn]] void bad(const std::string& what) { throw ConfigError("experiment config: " + what); }

void reject_unknown(const json& obj, std::initializer_list<std::string_view> known,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      bad("unknown key '" + it.key() + "' in " + where);
    }
  }
}

double get_real(const json& j, const std::string& key) {
  if (!j.is_number()) bad("'" + key + "' must be a number");
  return j.get<double>();
}

long get_int(const json& j, const std::string& key) {
  if (!j.is_number_integer()) bad("'" + key + "' must be an integer");
  return j.get<long>();
}

bool get_bool(const json& j, const std::string& key) {
  if (!j.is_boolean()) bad("'" + key + "' must be true or false");
  return j.get<bool>();
}

const json& require_object(const json& j, const std::string& key) {
  if (!j.is_object()) bad("'" + key + "' must be an object");
  return j;
}

json variant_json(const Variant& v) {
  return json{{"tau1", v.tau1}, {"tau2", v.tau2}, {"inertial", v.inertial}};
}

double max_lipschitz_G(const ExperimentConfig& cfg) {
  double L = 0.0;
  if (cfg.density < 1.0) L = std::max(L, 0.25);
  if (cfg.density > 0.0) L = std::max(L, cfg.c / 4.0);
  return L;
}

}  // namespace

std::string_view version() { return IADMM_VERSION; }

std::string Variant::label() const {
  if (gd) return "GD";
  return std::string(inertial ? "iADMMn" : "ADMMn") + "(" + shortest(tau1) + "," +
         shortest(tau2) + ")";
}

std::string Variant::token() const {
  if (gd) return "GD";
  return std::string(inertial ? "iADMMn" : "ADMMn") + "_" + shortest(tau1) + "_" + shortest(tau2);
}

std::string label_from_token(std::string_view token) {
  if (token == "GD") return "GD";
  const auto parts = split(token, "_");
  if (parts.size() != 3 || (parts[0] != "iADMMn" && parts[0] != "ADMMn")) {
    throw SchemaError("unknown algorithm token '" + std::string(token) + "'");
  }
  Variant v;
  v.inertial = parts[0] == "iADMMn";
  v.tau1 = parse_number(parts[1]);
  v.tau2 = parse_number(parts[2]);
  return v.label();
}

std::vector<Variant> ExperimentConfig::all_variants() const {
  std::vector<Variant> out = variants;
  if (gd) out.push_back(Variant{true});
  return out;
}

ExperimentConfig parse_experiment_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("top level must be an object");
  reject_unknown(doc,
                 {"sizes", "r", "density", "c", "lambda_d", "lambda_t", "beta", "variants", "gd",
                  "trials", "budget", "master_seed", "B1", "B2", "check_level", "output_dir", "jobs"},
                 "top level");

  ExperimentConfig cfg;
  if (doc.contains("sizes")) {
    const json& s = doc["sizes"];
    if (!s.is_array()) bad("'sizes' must be a list of [m, n] pairs");
    cfg.sizes.clear();
    for (const json& pair : s) {
      if (!pair.is_array() || pair.size() != 2) bad("'sizes' entries must be [m, n]");
      cfg.sizes.emplace_back(get_int(pair[0], "sizes"), get_int(pair[1], "sizes"));
    }
  }
  if (doc.contains("r")) cfg.r = get_int(doc["r"], "r");
  if (doc.contains("density")) cfg.density = get_real(doc["density"], "density");
  if (doc.contains("c")) cfg.c = get_real(doc["c"], "c");
  if (doc.contains("lambda_d")) cfg.lambda_d = get_real(doc["lambda_d"], "lambda_d");
  if (doc.contains("lambda_t")) cfg.lambda_t = get_real(doc["lambda_t"], "lambda_t");
  if (doc.contains("beta")) cfg.beta = get_real(doc["beta"], "beta");
  if (doc.contains("variants")) {
    const json& vs = doc["variants"];
    if (!vs.is_array()) bad("'variants' must be a list");
    for (const json& v : vs) {
      require_object(v, "variants[]");
      reject_unknown(v, {"tau1", "tau2", "inertial"}, "variants[]");
      if (!v.contains("tau1") || !v.contains("tau2")) bad("variants need tau1 and tau2");
      Variant var;
      var.tau1 = get_real(v["tau1"], "tau1");
      var.tau2 = get_real(v["tau2"], "tau2");
      if (v.contains("inertial")) var.inertial = get_bool(v["inertial"], "inertial");
      cfg.variants.push_back(var);
    }
  }
  if (doc.contains("gd")) cfg.gd = get_bool(doc["gd"], "gd");
  if (doc.contains("trials")) {
    const json& t = require_object(doc["trials"], "trials");
    reject_unknown(t, {"datasets", "inits"}, "trials");
    if (t.contains("datasets")) cfg.n_datasets = get_int(t["datasets"], "datasets");
    if (t.contains("inits")) cfg.n_inits = get_int(t["inits"], "inits");
  }
  if (doc.contains("budget")) {
    const json& b = require_object(doc["budget"], "budget");
    reject_unknown(b, {"iterations", "seconds"}, "budget");
    if (b.contains("iterations")) cfg.max_iters = get_int(b["iterations"], "iterations");
    if (b.contains("seconds")) cfg.max_seconds = get_real(b["seconds"], "seconds");
  }
  if (doc.contains("master_seed")) {
    const json& s = doc["master_seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      bad("'master_seed' must be a non-negative integer");
    }
    cfg.master_seed = s.get<std::uint64_t>();
  }
  if (doc.contains("B1")) cfg.B1 = get_real(doc["B1"], "B1");
  if (doc.contains("B2")) cfg.B2 = get_real(doc["B2"], "B2");
  if (doc.contains("check_level")) {
    if (!doc["check_level"].is_string()) bad("'check_level' must be a string");
    cfg.check_level = parse_check_level(doc["check_level"].get<std::string>());
  }
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string()) bad("'output_dir' must be a string");
    cfg.output_dir = doc["output_dir"].get<std::string>();
  }
  if (doc.contains("jobs")) cfg.jobs = static_cast<int>(get_int(doc["jobs"], "jobs"));
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_experiment_config(ss.str());
}

std::string config_echo_json(const ExperimentConfig& cfg) {
  json sizes = json::array();
  for (const auto& [m, n] : cfg.sizes) sizes.push_back(json::array({m, n}));
  json variants = json::array();
  for (const Variant& v : cfg.variants) variants.push_back(variant_json(v));
  json budget = json::object();
  if (cfg.max_iters) budget["iterations"] = *cfg.max_iters;
  if (cfg.max_seconds) budget["seconds"] = *cfg.max_seconds;
  const json echo{{"sizes", sizes},
                  {"r", cfg.r},
                  {"density", cfg.density},
                  {"c", cfg.c},
                  {"lambda_d", cfg.lambda_d},
                  {"lambda_t", cfg.lambda_t},
                  {"beta", cfg.beta},
                  {"variants", variants},
                  {"gd", cfg.gd},
                  {"trials", {{"datasets", cfg.n_datasets}, {"inits", cfg.n_inits}}},
                  {"budget", budget},
                  {"master_seed", cfg.master_seed},
                  {"B1", cfg.B1},
                  {"B2", cfg.B2},
                  {"check_level", std::string(to_string(cfg.check_level))}};
  return echo.dump(2);
}

void validate_experiment(const ExperimentConfig& cfg) {
  if (cfg.sizes.empty()) bad("'sizes' is empty");
  for (const auto& [m, n] : cfg.sizes) {
    if (m < 1 || n < 1) bad("sizes must be >= 1");
  }
  if (cfg.r < 1) bad("'r' must be >= 1");
  if (!(cfg.density >= 0.0 && cfg.density <= 1.0)) bad("'density' must lie in [0, 1]");
  if (!(cfg.c >= 0.0)) bad("'c' must be >= 0");
  if (!(cfg.lambda_d >= 0.0) || !(cfg.lambda_t >= 0.0)) bad("lambdas must be >= 0");
  if (cfg.n_datasets < 1 || cfg.n_inits < 1) bad("trial counts must be >= 1");
  if (cfg.all_variants().empty()) bad("no variants and gd disabled");
  if (!cfg.max_iters && !cfg.max_seconds) bad("'budget' needs iterations and/or seconds");
  if ((cfg.max_iters && *cfg.max_iters < 0) || (cfg.max_seconds && !(*cfg.max_seconds >= 0.0))) {
    bad("budgets must be non-negative");
  }
  if (cfg.jobs < 1) bad("'jobs' must be >= 1");
  const ProblemConstants pc{1.0, 1.0, max_lipschitz_G(cfg)};
  for (const Variant& v : cfg.variants) {
    const ScalarParameters sp{cfg.beta, v.tau1, v.tau2, cfg.B1, cfg.B2};
    if (auto c = first_violation(sp, pc)) {
      throw ParameterError(*c, "variant " + v.label() + " with beta=" + shortest(cfg.beta) +
                                   " B2=" + shortest(cfg.B2) + " L_G=" + shortest(pc.L_G));
    }
  }
}

SolverConfig solver_config_for(const ExperimentConfig& cfg, const Variant& v) {
  SolverConfig sc;
  sc.beta = cfg.beta;
  sc.tau1 = v.tau1;
  sc.tau2 = v.tau2;
  sc.B1 = cfg.B1;
  sc.B2 = cfg.B2;
  sc.extrapolation = v.inertial ? Extrapolation::kNesterovCapped : Extrapolation::kNone;
  sc.max_iters = cfg.max_iters;
  sc.max_seconds = cfg.max_seconds;
  sc.tolerance = 0.0;
  sc.seed = cfg.master_seed;
  sc.check_level = cfg.check_level;
  return sc;
}

std::uint64_t data_seed(std::uint64_t master, std::size_t size_index, long dataset) {
  return derive_seed(master, {0, size_index, static_cast<std::uint64_t>(dataset)});
}

std::uint64_t init_seed(std::uint64_t master, std::size_t size_index, long dataset, long init) {
  return derive_seed(master, {1, size_index, static_cast<std::uint64_t>(dataset),
                              static_cast<std::uint64_t>(init)});
}

std::string trace_file_name(const Variant& v, Index m, Index n, long dataset, long init) {
  return v.token() + "__" + std::to_string(m) + "x" + std::to_string(n) + "__d" +
         std::to_string(dataset) + "__i" + std::to_string(init) + ".csv";
}

TraceName parse_trace_file_name(std::string_view file_name) {
  const auto fail = [&] { throw SchemaError("unexpected trace file name '" + std::string(file_name) + "'"); };
  if (file_name.size() < 4 || file_name.substr(file_name.size() - 4) != ".csv") fail();
  const auto parts = split(file_name.substr(0, file_name.size() - 4), "__");
  if (parts.size() != 4) fail();
  TraceName t;
  t.label = label_from_token(parts[0]);
  const auto dims = split(parts[1], "x");
  if (dims.size() != 2 || parts[2].size() < 2 || parts[2][0] != 'd' || parts[3].size() < 2 ||
      parts[3][0] != 'i') {
    fail();
  }
  const auto to_long = [&](std::string_view s) {
    long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || v < 0) fail();
    return v;
  };
  t.m = to_long(dims[0]);
  t.n = to_long(dims[1]);
  t.dataset = to_long(std::string_view(parts[2]).substr(1));
  t.init = to_long(std::string_view(parts[3]).substr(1));
  return t;
}

namespace {

struct Cell {
  std::size_t size_index;
  Index m, n;
  long dataset, init;
  logmf::LogMfInstance instance;
  RowMatrix U0, V0;
  std::uint64_t data_hash, init_hash;
};

struct Task {
  std::size_t cell;
  Variant variant;
};

std::vector<TraceRecord> run_one(const Cell& cell, const Variant& v, const ExperimentConfig& cfg) {
  if (hash_matrix(cell.instance.Y) != cell.data_hash ||
      hash_matrix(cell.V0, hash_matrix(cell.U0)) != cell.init_hash) {
    throw InvariantError("trial inputs changed between variants");
  }
  if (v.gd) {
    logmf::GdOptions opts{cfg.max_iters, cfg.max_seconds};
    return logmf::run_gd(cell.instance, cell.U0, cell.V0, opts).trace;
  }
  const logmf::LogMfProblem problem(cell.instance);
  if (hash_matrix(problem.instance().Y) != cell.data_hash) {
    throw InvariantError("problem data differs from the cell data");
  }
  const SolverConfig sc = solver_config_for(cfg, v);
  InitialPoint init{problem.pack(cell.U0, cell.V0), problem.pack_W(cell.U0 * cell.V0), std::nullopt};
  return run(problem, sc, init).trace;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream* log) {
  validate_experiment(cfg);
  namespace fs = std::filesystem;
  const fs::path out_dir(cfg.output_dir);
  const fs::path trace_dir = out_dir / "traces";
  try {
    fs::create_directories(trace_dir);
  } catch (const fs::filesystem_error& e) {
    throw IoError("cannot create output directory: " + std::string(e.what()));
  }
  const std::string echo = config_echo_json(cfg);
  write_file_atomic(out_dir / "config.json", echo + "\n");

  std::vector<Cell> cells;
  for (std::size_t s = 0; s < cfg.sizes.size(); ++s) {
    const auto [m, n] = cfg.sizes[s];
    for (long d = 0; d < cfg.n_datasets; ++d) {
      logmf::LogMfInstance inst;
      inst.Y = logmf::generate_instance(m, n, cfg.density, data_seed(cfg.master_seed, s, d)).to_dense();
      inst.r = cfg.r;
      inst.c = cfg.c;
      inst.lambda_d = cfg.lambda_d;
      inst.lambda_t = cfg.lambda_t;
      inst.beta = cfg.beta;
      inst.validate();
      for (long i = 0; i < cfg.n_inits; ++i) {
        auto [U0, V0] = logmf::initial_factors(m, n, cfg.r, init_seed(cfg.master_seed, s, d, i));
        Cell cell{s, m, n, d, i, inst, std::move(U0), std::move(V0), 0, 0};
        cell.data_hash = hash_matrix(cell.instance.Y);
        cell.init_hash = hash_matrix(cell.V0, hash_matrix(cell.U0));
        cells.push_back(std::move(cell));
      }
    }
  }

  const std::vector<Variant> variants = cfg.all_variants();
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (const Variant& v : variants) tasks.push_back(Task{c, v});
  }

  std::vector<TrialResult> trials(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex mu;
  std::size_t done = 0;

  const auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size() || failed.load()) return;
      try {
        const Cell& cell = cells[tasks[t].cell];
        const Variant& v = tasks[t].variant;
        TrialResult tr;
        tr.algorithm = v.label();
        tr.m = cell.m;
        tr.n = cell.n;
        tr.dataset = cell.dataset;
        tr.init = cell.init;
        tr.trace = run_one(cell, v, cfg);
        tr.trace_path = trace_dir / trace_file_name(v, cell.m, cell.n, cell.dataset, cell.init);
        save_trace(tr.trace_path, tr.trace);
        std::lock_guard<std::mutex> lock(mu);
        ++done;
        if (log != nullptr) {
          *log << "[" << done << "/" << tasks.size() << "] " << tr.algorithm << " " << cell.m << "x"
               << cell.n << " d" << cell.dataset << " i" << cell.init << ": "
               << tr.trace.back().k << " iterations, objective "
               << format_double(tr.trace.back().objective) << "\n";
        }
        trials[t] = std::move(tr);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };

  const std::size_t n_workers =
      std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), std::max<std::size_t>(tasks.size(), 1));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  ExperimentResult result;
  result.rows = summarize_trials(trials);
  result.summary_path = out_dir / "summary.json";
  write_file_atomic(result.summary_path, summary_json(echo, result.rows, cfg.master_seed));

  json manifest = json::array();
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const Cell& cell = cells[tasks[t].cell];
    manifest.push_back(json{{"file", trials[t].trace_path.filename().string()},
                            {"algorithm", trials[t].algorithm},
                            {"m", cell.m},
                            {"n", cell.n},
                            {"dataset", cell.dataset},
                            {"init", cell.init},
                            {"data_hash", hex(cell.data_hash)},
                            {"init_hash", hex(cell.init_hash)},
                            {"iterations", trials[t].trace.back().k},
                            {"final_objective", trials[t].trace.back().objective}});
  }
  write_file_atomic(out_dir / "manifest.json", manifest.dump(2) + "\n");
  write_plot_data(trials, out_dir, cfg.max_seconds);
  result.trials = std::move(trials);
  return result;
}

}  // namespace iadmm::bench
