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


#include "iadmm/trace_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "iadmm/errors.hpp"
#include "iadmm/matrix_io.hpp"

namespace iadmm {

namespace {

std::string field(double v) { return std::isnan(v) ? "nan" : format_double(v); }

double parse_field(const std::string& s, long line) {
  if (s == "nan" || s == "NaN") return kNaN;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw SchemaError("trace line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace) {
  out << kTraceHeader << '\n';
  for (const TraceRecord& r : trace) {
    out << r.k << ',' << field(r.wall_time_s) << ',' << field(r.objective) << ','
        << field(r.aug_lagrangian) << ',' << field(r.lyapunov) << ',' << field(r.feas) << ','
        << field(r.stat_x_max) << ',' << field(r.stat_y) << ',' << field(r.dx) << ','
        << field(r.dy) << ',' << field(r.domega) << '\n';
  }
}

std::string trace_csv(const std::vector<TraceRecord>& trace) {
  std::ostringstream out;
  write_trace_csv(out, trace);
  return out.str();
}

std::vector<TraceRecord> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("empty trace file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTraceHeader) throw SchemaError("unexpected trace header '" + line + "'");

  std::vector<TraceRecord> trace;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 11) {
      throw SchemaError("trace line " + std::to_string(lineno) + ": expected 11 fields, got " +
                        std::to_string(cells.size()));
    }
    TraceRecord r;
    const double k = parse_field(cells[0], lineno);
    if (k != static_cast<double>(static_cast<long>(k)) || k < 0) {
      throw SchemaError("trace line " + std::to_string(lineno) + ": bad iteration index");
    }
    r.k = static_cast<long>(k);
    if (!trace.empty() && r.k <= trace.back().k) {
      throw SchemaError("trace line " + std::to_string(lineno) + ": k not increasing");
    }
    double* dst[] = {&r.wall_time_s, &r.objective, &r.aug_lagrangian, &r.lyapunov, &r.feas,
                     &r.stat_x_max,  &r.stat_y,    &r.dx,             &r.dy,       &r.domega};
    for (std::size_t j = 0; j < 10; ++j) *dst[j] = parse_field(cells[j + 1], lineno);
    trace.push_back(std::move(r));
  }
  return trace;
}

void save_trace(const std::filesystem::path& path, const std::vector<TraceRecord>& trace) {
  write_file_atomic(path, trace_csv(trace));
}

std::vector<TraceRecord> load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_trace_csv(in);
}

}  // namespace iadmm
