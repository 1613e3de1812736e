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

#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "iadmm/engine.hpp"

namespace iadmm {

/// Column header of trace CSV files.
inline constexpr std::string_view kTraceHeader =
    "k,time_s,objective,aug_lagrangian,lyapunov,feas,stat_x_max,stat_y,dx,dy,domega";

/// Writes the header and one row per record. NaN is written as "nan".
void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace);
std::string trace_csv(const std::vector<TraceRecord>& trace);

/// Parses a trace CSV. Throws SchemaError on a header mismatch, a short row, an
/// unparsable field, or non-increasing k. Fields outside the CSV stay NaN.
std::vector<TraceRecord> read_trace_csv(std::istream& in);

void save_trace(const std::filesystem::path& path, const std::vector<TraceRecord>& trace);
std::vector<TraceRecord> load_trace(const std::filesystem::path& path);

}  // namespace iadmm
