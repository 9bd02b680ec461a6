// Copyright 2026 The ldpsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldpsim/export.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "ldpsim/error.h"

namespace ldpsim {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string optional_real(const std::optional<double>& v) {
  return v ? format_real(*v) : std::string();
}

// JSON has no NaN or infinity; those become null.
std::string json_real(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return "null";
  return format_real(*v);
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

void write_results(std::span<const ResultRow> rows, OutputFormat format,
                   std::ostream& out) {
  if (format == OutputFormat::kCsv) {
    for (std::size_t i = 0; i < std::size(kResultColumns); ++i) {
      out << (i ? "," : "") << kResultColumns[i];
    }
    out << '\n';
    for (const auto& r : rows) {
      out << csv_field(r.experiment) << ',' << csv_field(r.protocol) << ','
          << csv_field(r.solution) << ',' << optional_real(r.epsilon) << ','
          << optional_real(r.beta) << ',' << csv_field(r.metric) << ','
          << format_real(r.value) << ',' << optional_real(r.std_error) << ','
          << r.run << ',' << r.seed << ',' << csv_field(r.flags) << '\n';
    }
    return;
  }
  for (const auto& r : rows) {
    out << "{\"experiment\":" << json_string(r.experiment)
        << ",\"protocol\":" << json_string(r.protocol)
        << ",\"solution\":" << json_string(r.solution)
        << ",\"epsilon\":" << json_real(r.epsilon)
        << ",\"beta\":" << json_real(r.beta)
        << ",\"metric\":" << json_string(r.metric)
        << ",\"value\":" << json_real(r.value)
        << ",\"stderr\":" << json_real(r.std_error) << ",\"run\":" << r.run
        << ",\"seed\":" << r.seed << ",\"flags\":" << json_string(r.flags)
        << "}\n";
  }
}

void export_results(std::span<const ResultRow> rows, OutputFormat format,
                    const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write results to '" + path + "'");
  write_results(rows, format, out);
  out.flush();
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace ldpsim
