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


#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "iadmm/errors.hpp"
#include "iadmm/experiment.hpp"
#include "iadmm/matrix_io.hpp"
#include "iadmm/trace_io.hpp"
#include "json.hpp"

namespace iadmm::bench {

namespace {

using nlohmann::json;

// Algorithms in order of first appearance, each with its trials.
std::vector<std::pair<std::string, std::vector<const TrialResult*>>> group_by_algorithm(
    const std::vector<TrialResult>& trials) {
  std::vector<std::pair<std::string, std::vector<const TrialResult*>>> groups;
  for (const TrialResult& t : trials) {
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g) { return g.first == t.algorithm; });
    if (it == groups.end()) {
      groups.emplace_back(t.algorithm, std::vector<const TrialResult*>{});
      it = std::prev(groups.end());
    }
    it->second.push_back(&t);
  }
  return groups;
}

double objective_at_time(const std::vector<TraceRecord>& trace, double t) {
  const TraceRecord* last = &trace.front();
  for (const TraceRecord& r : trace) {
    if (r.wall_time_s > t) break;
    last = &r;
  }
  return last->objective;
}

void require_nonempty(const TrialResult& t) {
  if (t.trace.empty()) throw SchemaError("empty trace for " + t.algorithm);
}

}  // namespace

std::vector<SummaryRow> summarize_trials(const std::vector<TrialResult>& trials) {
  std::vector<SummaryRow> rows;
  std::vector<std::vector<double>> finals;
  for (const TrialResult& t : trials) {
    require_nonempty(t);
    auto it = std::find_if(rows.begin(), rows.end(), [&](const SummaryRow& r) {
      return r.algorithm == t.algorithm && r.m == t.m && r.n == t.n;
    });
    if (it == rows.end()) {
      rows.push_back(SummaryRow{t.algorithm, t.m, t.n, 0.0, 0.0, 0});
      finals.emplace_back();
      it = std::prev(rows.end());
    }
    finals[static_cast<std::size_t>(it - rows.begin())].push_back(t.trace.back().objective);
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::vector<double>& v = finals[i];
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    rows[i].mean = mean;
    rows[i].std = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    rows[i].n_trials = static_cast<long>(v.size());
  }
  return rows;
}

std::string summary_json(const std::string& experiment_echo, const std::vector<SummaryRow>& rows,
                         std::uint64_t master_seed) {
  json doc;
  doc["experiment"] = experiment_echo.empty() ? json(nullptr) : json::parse(experiment_echo);
  json arr = json::array();
  for (const SummaryRow& r : rows) {
    arr.push_back(json{{"algorithm", r.algorithm},
                       {"m", r.m},
                       {"n", r.n},
                       {"mean", r.mean},
                       {"std", r.std},
                       {"n_trials", r.n_trials}});
  }
  doc["rows"] = arr;
  doc["provenance"] = json{{"master_seed", master_seed}, {"version", std::string(version())}};
  return doc.dump(2) + "\n";
}

std::string plot_time_csv(const std::vector<TrialResult>& trials, double horizon, int points) {
  if (points < 2) throw ConfigError("plot grid needs at least 2 points");
  const auto groups = group_by_algorithm(trials);
  std::ostringstream out;
  out << "time_s";
  for (const auto& g : groups) out << ',' << g.first;
  out << '\n';
  for (int j = 0; j < points; ++j) {
    const double t = horizon * static_cast<double>(j) / static_cast<double>(points - 1);
    out << format_double(t);
    for (const auto& g : groups) {
      double sum = 0.0;
      for (const TrialResult* tr : g.second) {
        require_nonempty(*tr);
        sum += objective_at_time(tr->trace, t);
      }
      out << ',' << format_double(sum / static_cast<double>(g.second.size()));
    }
    out << '\n';
  }
  return out.str();
}

std::string plot_iteration_csv(const std::vector<TrialResult>& trials) {
  const auto groups = group_by_algorithm(trials);
  long k_max = 0;
  for (const TrialResult& t : trials) {
    require_nonempty(t);
    k_max = std::max(k_max, static_cast<long>(t.trace.size()) - 1);
  }
  std::ostringstream out;
  out << 'k';
  for (const auto& g : groups) out << ',' << g.first;
  out << '\n';
  for (long k = 0; k <= k_max; ++k) {
    out << k;
    for (const auto& g : groups) {
      double sum = 0.0;
      for (const TrialResult* tr : g.second) {
        const auto idx = std::min<std::size_t>(static_cast<std::size_t>(k), tr->trace.size() - 1);
        sum += tr->trace[idx].objective;
      }
      out << ',' << format_double(sum / static_cast<double>(g.second.size()));
    }
    out << '\n';
  }
  return out.str();
}

void write_plot_data(const std::vector<TrialResult>& trials, const std::filesystem::path& dir,
                     std::optional<double> horizon) {
  std::vector<std::pair<Index, Index>> sizes;
  for (const TrialResult& t : trials) {
    if (std::find(sizes.begin(), sizes.end(), std::make_pair(t.m, t.n)) == sizes.end()) {
      sizes.emplace_back(t.m, t.n);
    }
  }
  for (const auto& [m, n] : sizes) {
    std::vector<TrialResult> subset;
    double longest = 0.0;
    for (const TrialResult& t : trials) {
      if (t.m != m || t.n != n) continue;
      require_nonempty(t);
      longest = std::max(longest, t.trace.back().wall_time_s);
      subset.push_back(t);
    }
    const std::string suffix = std::to_string(m) + "x" + std::to_string(n) + ".csv";
    write_file_atomic(dir / ("plot_time__" + suffix), plot_time_csv(subset, horizon.value_or(longest)));
    write_file_atomic(dir / ("plot_iter__" + suffix), plot_iteration_csv(subset));
  }
}

SummarizeOutput summarize(const std::filesystem::path& trace_dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(trace_dir)) throw IoError("not a directory: " + trace_dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(trace_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw SchemaError("no trace files in " + trace_dir.string());

  SummarizeOutput out;
  for (const fs::path& f : files) {
    const TraceName name = parse_trace_file_name(f.filename().string());
    TrialResult t;
    t.algorithm = name.label;
    t.m = name.m;
    t.n = name.n;
    t.dataset = name.dataset;
    t.init = name.init;
    t.trace_path = f;
    t.trace = load_trace(f);
    if (t.trace.empty()) throw SchemaError("trace without records: " + f.string());
    out.trials.push_back(std::move(t));
  }
  std::stable_sort(out.trials.begin(), out.trials.end(), [](const TrialResult& a, const TrialResult& b) {
    return std::tie(a.m, a.n) < std::tie(b.m, b.n);
  });
  out.rows = summarize_trials(out.trials);
  return out;
}

}  // namespace iadmm::bench
