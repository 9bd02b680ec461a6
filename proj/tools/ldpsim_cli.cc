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

// Command-line front end: one subcommand per experiment kind.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ldpsim/config.h"
#include "ldpsim/error.h"
#include "ldpsim/export.h"
#include "ldpsim/harness.h"

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::size_t> runs;
  std::optional<std::size_t> threads;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "experiment config file");
  sub->add_option("--seed", o.seed, "master seed");
  sub->add_option("--out", o.out, "result file (stdout when omitted)");
  sub->add_option("--format", o.format, "csv or jsonl");
  sub->add_option("--runs", o.runs, "runs per grid point");
  sub->add_option("--threads", o.threads, "worker threads");
}

int run(ldpsim::ExperimentKind kind, const Options& o) {
  using namespace ldpsim;
  ExperimentConfig config;
  if (o.config.empty()) {
    config.kind = kind;
  } else {
    config = load_config(o.config, kind);
  }
  // Precedence: flags > LDPSIM_THREADS > config file > defaults.
  if (const char* env = std::getenv(kThreadsEnv); env != nullptr && *env) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (env[used] != '\0') throw std::invalid_argument(env);
      config.threads = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw ConfigError(std::string(kThreadsEnv) + " is not an integer");
    }
  }
  if (o.seed) config.seed = *o.seed;
  if (o.out) config.out = *o.out;
  if (o.format) config.format = parse_format(*o.format);
  if (o.runs) config.runs = *o.runs;
  if (o.threads) config.threads = *o.threads;
  finalize_config(config);

  const auto start = std::chrono::steady_clock::now();
  const auto rows = run_experiment(config);
  if (config.out.empty()) {
    write_results(rows, config.format, std::cout);
  } else {
    export_results(rows, config.format, config.out);
  }
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  std::cerr << experiment_name(config.kind) << ": " << rows.size()
            << " rows in " << elapsed.count() << " s\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ldpsim: local differential privacy attack and utility simulator"};
  app.require_subcommand(1);
  Options opts;
  const std::pair<const char*, const char*> commands[] = {
      {"analytic", "closed-form attacker accuracy (single and multi-collection)"},
      {"attack-oracle", "Monte-Carlo attacker accuracy against single reports"},
      {"reident", "re-identification across multiple collections"},
      {"attr-infer", "sampled-attribute inference against RS+FD / RS+RFD"},
      {"mse", "estimation utility (MSE_avg) of RS+FD and RS+RFD"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const auto* sub = app.get_subcommands().front();
    return run(ldpsim::parse_experiment(sub->get_name()), opts);
  } catch (const ldpsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
