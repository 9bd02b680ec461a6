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

#ifndef LDPSIM_HARNESS_H_
#define LDPSIM_HARNESS_H_

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "ldpsim/config.h"
#include "ldpsim/data.h"
#include "ldpsim/export.h"

namespace ldpsim {

// Environment variable that overrides the config thread count (the CLI
// flag still wins).
inline constexpr const char* kThreadsEnv = "LDPSIM_THREADS";

// Runs body(i) for i in [0, tasks) on `threads` workers. Tasks are claimed
// from a shared counter; callers store results by index so the thread count
// cannot change the output. The exception of the lowest failing index is
// rethrown after all workers stop.
void parallel_for(std::size_t tasks, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

// Loads or generates the configured dataset and applies the subsample.
Dataset resolve_dataset(const ExperimentConfig& config);

// Runs every (grid point, run) task of the experiment and returns the rows in
// grid order. `config` must have passed finalize_config. Module errors are
// rethrown with the grid point that raised them.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

}  // namespace ldpsim

#endif  // LDPSIM_HARNESS_H_
