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

#ifndef LDPSIM_EXPORT_H_
#define LDPSIM_EXPORT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ldpsim/config.h"

namespace ldpsim {

struct ResultRow {
  std::string experiment;
  std::string protocol;
  std::string solution;
  std::optional<double> epsilon;
  std::optional<double> beta;
  std::string metric;
  double value = 0.0;
  std::optional<double> std_error;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  // Semicolon-separated key=value metadata.
  std::string flags;
};

inline constexpr const char* kResultColumns[] = {
    "experiment", "protocol", "solution", "epsilon", "beta", "metric",
    "value",      "stderr",   "run",      "seed",    "flags"};

// %.10g; NaN and infinities print as nan / inf / -inf.
std::string format_real(double value);

void write_results(std::span<const ResultRow> rows, OutputFormat format,
                   std::ostream& out);

// Throws Error when the path cannot be written.
void export_results(std::span<const ResultRow> rows, OutputFormat format,
                    const std::string& path);

}  // namespace ldpsim

#endif  // LDPSIM_EXPORT_H_
