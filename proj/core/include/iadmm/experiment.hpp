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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "iadmm/block_vector.hpp"
#include "iadmm/config.hpp"
#include "iadmm/engine.hpp"

namespace iadmm::bench {

/// Library version string.
std::string_view version();

/// One algorithm of the comparison. `gd` selects the gradient baseline and
/// ignores the other fields.
struct Variant {
  bool gd = false;
  double tau1 = 1.0;
  double tau2 = 1.0;
  bool inertial = true;

  /// "iADMMn(0.1,0.1)", "ADMMn(0.1,0.1)" or "GD".
  std::string label() const;
  /// Filename-safe form: "iADMMn_0.1_0.1", "ADMMn_0.1_0.1" or "GD".
  std::string token() const;
};

/// Maps a token back to its label. Throws SchemaError on an unknown token.
std::string label_from_token(std::string_view token);

struct ExperimentConfig {
  std::vector<std::pair<Index, Index>> sizes{{200, 200}};
  Index r = 100;
  double density = 0.1;
  double c = 1.0;
  double lambda_d = 0.25;
  double lambda_t = 0.25;
  double beta = 1.0;
  std::vector<Variant> variants;
  bool gd = true;
  long n_datasets = 5;
  long n_inits = 5;
  std::optional<long> max_iters;
  std::optional<double> max_seconds;
  std::uint64_t master_seed = 0;
  double B1 = 0.9999;
  double B2 = 0.9;
  CheckLevel check_level = CheckLevel::kOff;
  std::string output_dir = "results";
  int jobs = 1;

  /// Variants in run order: the configured ones followed by GD when enabled.
  std::vector<Variant> all_variants() const;
};

/// Parses the JSON config document. Unknown keys and wrong types are ConfigErrors.
ExperimentConfig parse_experiment_config(std::string_view json_text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// JSON echo of the config without output_dir and jobs.
std::string config_echo_json(const ExperimentConfig& cfg);

/// Checks counts, sizes and every variant against the parameter conditions
/// using the largest L_G the data can produce. Throws ConfigError.
void validate_experiment(const ExperimentConfig& cfg);

/// Solver settings of one iADMMn variant.
SolverConfig solver_config_for(const ExperimentConfig& cfg, const Variant& v);

/// Seeds of one trial cell.
std::uint64_t data_seed(std::uint64_t master, std::size_t size_index, long dataset);
std::uint64_t init_seed(std::uint64_t master, std::size_t size_index, long dataset, long init);

/// "<token>__<m>x<n>__d<dataset>__i<init>.csv"
std::string trace_file_name(const Variant& v, Index m, Index n, long dataset, long init);

struct TraceName {
  std::string label;
  Index m = 0;
  Index n = 0;
  long dataset = 0;
  long init = 0;
};
/// Inverse of trace_file_name. Throws SchemaError.
TraceName parse_trace_file_name(std::string_view file_name);

struct SummaryRow {
  std::string algorithm;
  Index m = 0;
  Index n = 0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for a single trial
  long n_trials = 0;
};

struct TrialResult {
  std::string algorithm;
  Index m = 0;
  Index n = 0;
  long dataset = 0;
  long init = 0;
  std::filesystem::path trace_path;
  std::vector<TraceRecord> trace;
};

struct ExperimentResult {
  std::vector<SummaryRow> rows;
  std::vector<TrialResult> trials;
  std::filesystem::path summary_path;
};

/// Runs every size x dataset x init x variant, writes one trace per run under
/// output_dir/traces, plus summary.json, config.json, manifest.json and plot data.
/// All variants of a cell get the same Y and (U0, V0); input hashes are checked.
/// Progress lines go to `log` when given.
ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream* log = nullptr);

/// Mean and sample standard deviation of final objectives per (algorithm, size),
/// in order of first appearance.
std::vector<SummaryRow> summarize_trials(const std::vector<TrialResult>& trials);

/// {experiment, rows, provenance: {master_seed, version}}.
std::string summary_json(const std::string& experiment_echo, const std::vector<SummaryRow>& rows,
                         std::uint64_t master_seed);

/// Mean objective per algorithm on `points` uniform times across [0, horizon],
/// last observation carried forward. Header "time_s,<algo>...".
std::string plot_time_csv(const std::vector<TrialResult>& trials, double horizon, int points = 100);
/// Mean objective per algorithm against iteration index. Header "k,<algo>...".
std::string plot_iteration_csv(const std::vector<TrialResult>& trials);

/// Writes plot_time__<m>x<n>.csv and plot_iter__<m>x<n>.csv for each size into `dir`.
void write_plot_data(const std::vector<TrialResult>& trials, const std::filesystem::path& dir,
                     std::optional<double> horizon);

struct SummarizeOutput {
  std::vector<SummaryRow> rows;
  std::vector<TrialResult> trials;
};

/// Loads every trace CSV in trace_dir (file names as written by run_experiment).
/// Throws SchemaError on a malformed trace or file name.
SummarizeOutput summarize(const std::filesystem::path& trace_dir);

}  // namespace iadmm::bench
