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

#ifndef LDPSIM_CONFIG_H_
#define LDPSIM_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ldpsim/adversary.h"
#include "ldpsim/inference.h"
#include "ldpsim/multidim.h"
#include "ldpsim/oracle.h"

namespace ldpsim {

enum class ExperimentKind { kAnalytic, kOracleAttack, kReident, kAttrInfer, kMse };

// "analytic_acc", "oracle_attack", "reident", "attr_infer", "mse_utility".
std::string_view experiment_name(ExperimentKind kind);
// Accepts the names above and the CLI spellings "analytic", "attack-oracle",
// "attr-infer", "mse".
ExperimentKind parse_experiment(std::string_view name);

enum class OutputFormat { kCsv, kJsonl };
OutputFormat parse_format(std::string_view name);

enum class PriorMode { kLaplace, kUniform, kTrue };

// Every knob of one experiment. Keys of the config file use the member
// names below.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kAnalytic;
  std::optional<std::uint64_t> seed;
  std::size_t runs = 1;
  std::size_t threads = 1;
  std::string out;
  OutputFormat format = OutputFormat::kCsv;

  // "synthetic:adult_like[:n]", "synthetic:zipf[:n]", "synthetic:uniform[:n]"
  // or a CSV path.
  std::string dataset;
  std::vector<std::string> columns;
  std::string identity_column;
  // Rows kept after loading (0 keeps all), drawn once from the seed.
  std::size_t subsample = 0;
  double zipf_exponent = 1.0;

  std::vector<Protocol> protocols;
  std::vector<std::string> solutions;
  std::vector<double> epsilons;
  std::vector<double> betas;
  std::vector<std::size_t> ks;
  AccuracyForm form = AccuracyForm::kPublished;

  // oracle_attack
  std::size_t users = 100000;
  bool multi = false;

  // reident
  std::size_t surveys = 5;
  std::vector<std::size_t> top_k = {1, 5, 10};
  KnowledgeMode knowledge = KnowledgeMode::kFull;
  PrivacyMetric metric = PrivacyMetric::kUniform;
  bool null_attacker = false;

  // attr_infer (and reident on RS+FD paths)
  std::vector<AttackModel> models = {AttackModel::kNk};
  std::vector<double> s_multipliers = {1.0};
  std::vector<double> npk_fractions = {0.1};
  std::string classifier = "naive_bayes";

  // RS+RFD priors
  PriorMode prior = PriorMode::kLaplace;
  double prior_epsilon = 0.1;
};

// Parses `key = value` lines. `#` starts a comment, lists are comma
// separated, and epsilon entries may be written ln(x). Throws ConfigError on
// unknown keys, malformed values, or an `experiment` key that disagrees
// with `kind`.
ExperimentConfig parse_config(std::istream& in, ExperimentKind kind);
ExperimentConfig load_config(const std::string& path, ExperimentKind kind);

// Fills per-kind defaults for empty grids and throws ConfigError on anything
// inconsistent (missing seed, empty grids, unknown solution names, ...).
void finalize_config(ExperimentConfig& config);

// Parses a number or ln(x).
double parse_real(std::string_view text);

}  // namespace ldpsim

#endif  // LDPSIM_CONFIG_H_
