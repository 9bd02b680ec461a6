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

#include "ldpsim/config.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>

#include "ldpsim/error.h"

namespace ldpsim {
namespace {

std::string trim(std::string_view s) {
  const auto blank = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && blank(s.back())) s.remove_suffix(1);
  return std::string(s);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const std::size_t comma = value.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? value.size() : comma;
    std::string item = trim(value.substr(start, end - start));
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::uint64_t parse_unsigned(std::string_view text) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("expected a non-negative integer, got '" + t + "'");
  }
  return v;
}

bool parse_bool(std::string_view text) {
  const std::string t = lower(trim(text));
  if (t == "true" || t == "yes" || t == "1" || t == "on") return true;
  if (t == "false" || t == "no" || t == "0" || t == "off") return false;
  throw ConfigError("expected a boolean, got '" + t + "'");
}

template <typename T, typename F>
std::vector<T> parse_list(std::string_view value, F&& item) {
  std::vector<T> out;
  for (const auto& s : split_list(value)) out.push_back(item(s));
  return out;
}

std::vector<double> range(double lo, double hi) {
  std::vector<double> out;
  for (double x = lo; x <= hi; x += 1.0) out.push_back(x);
  return out;
}

}  // namespace

std::string_view experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kAnalytic:
      return "analytic_acc";
    case ExperimentKind::kOracleAttack:
      return "oracle_attack";
    case ExperimentKind::kReident:
      return "reident";
    case ExperimentKind::kAttrInfer:
      return "attr_infer";
    case ExperimentKind::kMse:
      return "mse_utility";
  }
  return "?";
}

ExperimentKind parse_experiment(std::string_view name) {
  const std::string n = lower(std::string(name));
  if (n == "analytic_acc" || n == "analytic") return ExperimentKind::kAnalytic;
  if (n == "oracle_attack" || n == "attack-oracle") {
    return ExperimentKind::kOracleAttack;
  }
  if (n == "reident") return ExperimentKind::kReident;
  if (n == "attr_infer" || n == "attr-infer") return ExperimentKind::kAttrInfer;
  if (n == "mse_utility" || n == "mse") return ExperimentKind::kMse;
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

OutputFormat parse_format(std::string_view name) {
  const std::string n = lower(std::string(name));
  if (n == "csv") return OutputFormat::kCsv;
  if (n == "jsonl") return OutputFormat::kJsonl;
  throw ConfigError("unknown format '" + std::string(name) + "'");
}

double parse_real(std::string_view text) {
  std::string t = trim(text);
  const std::string l = lower(t);
  if (l.starts_with("ln(") && l.ends_with(")")) {
    const double inner = parse_real(std::string_view(t).substr(3, t.size() - 4));
    if (!(inner > 0.0)) throw ConfigError("ln argument must be positive");
    return std::log(inner);
  }
  if (t.empty()) throw ConfigError("expected a number, got nothing");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ConfigError("expected a number, got '" + t + "'");
  }
  if (used != t.size() || !std::isfinite(v)) {
    throw ConfigError("expected a number, got '" + t + "'");
  }
  return v;
}

ExperimentConfig parse_config(std::istream& in, ExperimentKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  using Setter = std::function<void(const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"experiment",
       [&](const std::string& v) {
         if (parse_experiment(v) != kind) {
           throw ConfigError("config is for experiment '" + v + "', not '" +
                             std::string(experiment_name(kind)) + "'");
         }
       }},
      {"seed", [&](const std::string& v) { c.seed = parse_unsigned(v); }},
      {"runs", [&](const std::string& v) { c.runs = parse_unsigned(v); }},
      {"threads", [&](const std::string& v) { c.threads = parse_unsigned(v); }},
      {"out", [&](const std::string& v) { c.out = v; }},
      {"format", [&](const std::string& v) { c.format = parse_format(v); }},
      {"dataset", [&](const std::string& v) { c.dataset = v; }},
      {"columns", [&](const std::string& v) { c.columns = split_list(v); }},
      {"identity_column", [&](const std::string& v) { c.identity_column = v; }},
      {"subsample", [&](const std::string& v) { c.subsample = parse_unsigned(v); }},
      {"zipf_exponent", [&](const std::string& v) { c.zipf_exponent = parse_real(v); }},
      {"protocols",
       [&](const std::string& v) {
         c.protocols = parse_list<Protocol>(v, [](const std::string& s) {
           try {
             return parse_protocol(s);
           } catch (const InvalidArgument& e) {
             throw ConfigError(e.what());
           }
         });
       }},
      {"solutions", [&](const std::string& v) { c.solutions = split_list(v); }},
      {"epsilons",
       [&](const std::string& v) {
         c.epsilons = parse_list<double>(v, [](const std::string& s) { return parse_real(s); });
       }},
      {"betas",
       [&](const std::string& v) {
         c.betas = parse_list<double>(v, [](const std::string& s) { return parse_real(s); });
       }},
      {"ks",
       [&](const std::string& v) {
         c.ks = parse_list<std::size_t>(v, [](const std::string& s) { return parse_unsigned(s); });
       }},
      {"form",
       [&](const std::string& v) {
         const std::string f = lower(v);
         if (f == "published") {
           c.form = AccuracyForm::kPublished;
         } else if (f == "exact") {
           c.form = AccuracyForm::kExact;
         } else {
           throw ConfigError("form must be published or exact");
         }
       }},
      {"users", [&](const std::string& v) { c.users = parse_unsigned(v); }},
      {"multi", [&](const std::string& v) { c.multi = parse_bool(v); }},
      {"surveys", [&](const std::string& v) { c.surveys = parse_unsigned(v); }},
      {"top_k",
       [&](const std::string& v) {
         c.top_k = parse_list<std::size_t>(v, [](const std::string& s) { return parse_unsigned(s); });
       }},
      {"knowledge",
       [&](const std::string& v) {
         const std::string k = lower(v);
         if (k == "fk" || k == "full") {
           c.knowledge = KnowledgeMode::kFull;
         } else if (k == "pk" || k == "partial") {
           c.knowledge = KnowledgeMode::kPartial;
         } else {
           throw ConfigError("knowledge must be fk or pk");
         }
       }},
      {"metric",
       [&](const std::string& v) {
         const std::string m = lower(v);
         if (m == "uniform") {
           c.metric = PrivacyMetric::kUniform;
         } else if (m == "non_uniform" || m == "non-uniform") {
           c.metric = PrivacyMetric::kNonUniform;
         } else {
           throw ConfigError("metric must be uniform or non_uniform");
         }
       }},
      {"null_attacker", [&](const std::string& v) { c.null_attacker = parse_bool(v); }},
      {"models",
       [&](const std::string& v) {
         c.models = parse_list<AttackModel>(v, [](const std::string& s) {
           try {
             return parse_attack_model(s);
           } catch (const InvalidArgument& e) {
             throw ConfigError(e.what());
           }
         });
       }},
      {"s_multipliers",
       [&](const std::string& v) {
         c.s_multipliers = parse_list<double>(v, [](const std::string& s) { return parse_real(s); });
       }},
      {"npk_fractions",
       [&](const std::string& v) {
         c.npk_fractions = parse_list<double>(v, [](const std::string& s) { return parse_real(s); });
       }},
      {"classifier", [&](const std::string& v) { c.classifier = v; }},
      {"prior",
       [&](const std::string& v) {
         const std::string p = lower(v);
         if (p == "laplace") {
           c.prior = PriorMode::kLaplace;
         } else if (p == "uniform") {
           c.prior = PriorMode::kUniform;
         } else if (p == "true") {
           c.prior = PriorMode::kTrue;
         } else {
           throw ConfigError("prior must be laplace, uniform or true");
         }
       }},
      {"prior_epsilon", [&](const std::string& v) { c.prior_epsilon = parse_real(v); }},
  };

  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string text = trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    }
    const std::string key = lower(trim(std::string_view(text).substr(0, eq)));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError("line " + std::to_string(number) + ": unknown key '" + key + "'");
    }
    try {
      it->second(value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(number) + " (" + key + "): " + e.what());
    }
  }
  return c;
}

ExperimentConfig load_config(const std::string& path, ExperimentKind kind) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse_config(in, kind);
}

void finalize_config(ExperimentConfig& c) {
  if (!c.seed) throw ConfigError("a seed is required (config key seed or --seed)");
  if (c.runs == 0) throw ConfigError("runs must be at least 1");
  if (c.threads == 0) throw ConfigError("threads must be at least 1");

  const bool grid_kind = c.kind == ExperimentKind::kAnalytic ||
                         c.kind == ExperimentKind::kOracleAttack;
  if (c.protocols.empty()) {
    c.protocols = grid_kind ? std::vector<Protocol>(std::begin(kAllProtocols),
                                                    std::end(kAllProtocols))
                            : std::vector<Protocol>{Protocol::kGrr};
  }
  switch (c.kind) {
    case ExperimentKind::kAnalytic:
      if (c.epsilons.empty()) c.epsilons = range(1, 10);
      if (c.ks.empty()) c.ks = {74, 7, 16};
      break;
    case ExperimentKind::kOracleAttack:
      if (c.epsilons.empty()) c.epsilons = {1, 4, 7, 10};
      if (c.ks.empty()) c.ks = {2, 7, 74};
      if (c.users == 0) throw ConfigError("users must be at least 1");
      break;
    case ExperimentKind::kReident:
      if (c.dataset.empty()) c.dataset = "synthetic:adult_like:5000";
      if (c.solutions.empty()) c.solutions = {"smp"};
      if (c.epsilons.empty() && c.betas.empty()) c.epsilons = range(1, 10);
      if (c.surveys < 2) throw ConfigError("surveys must be at least 2");
      if (c.top_k.empty()) throw ConfigError("top_k must not be empty");
      for (auto k : c.top_k) {
        if (k == 0) throw ConfigError("top_k entries must be positive");
      }
      break;
    case ExperimentKind::kAttrInfer:
      if (c.dataset.empty()) c.dataset = "synthetic:zipf:20000";
      if (c.ks.empty()) c.ks = {10, 8, 12, 6, 16};
      if (c.solutions.empty()) {
        c.solutions = {"rsfd_grr", "rsfd_sue_z", "rsfd_oue_z", "rsfd_sue_r",
                       "rsfd_oue_r"};
      }
      if (c.epsilons.empty()) c.epsilons = range(1, 10);
      break;
    case ExperimentKind::kMse:
      if (c.dataset.empty()) c.dataset = "synthetic:adult_like:5000";
      if (c.solutions.empty()) {
        c.solutions = {"rsfd_grr",   "rsrfd_grr",   "rsfd_sue_r",
                       "rsrfd_sue_r", "rsfd_oue_r", "rsrfd_oue_r"};
      }
      if (c.epsilons.empty()) {
        for (int x = 2; x <= 7; ++x) c.epsilons.push_back(std::log(x));
      }
      break;
  }
  if ((c.dataset.starts_with("synthetic:zipf") ||
       c.dataset.starts_with("synthetic:uniform")) &&
      c.ks.empty()) {
    c.ks = {10, 8, 12, 6, 16};
  }

  for (double e : c.epsilons) {
    if (!(e > 0.0)) throw ConfigError("epsilons must be positive");
  }
  for (double b : c.betas) {
    if (!(b > 0.0 && b < 1.0)) throw ConfigError("betas must lie in (0, 1)");
  }
  if (!c.betas.empty() && c.kind != ExperimentKind::kReident) {
    throw ConfigError("betas apply to reident only");
  }
  for (auto k : c.ks) {
    if (k < 2) throw ConfigError("every k must be at least 2");
  }
  for (const auto& name : c.solutions) {
    CollectionScheme s;
    try {
      s = CollectionScheme::parse(name);
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
    if (c.kind == ExperimentKind::kReident && s.solution == Solution::kSpl) {
      throw ConfigError("reident does not support spl");
    }
    if ((c.kind == ExperimentKind::kAttrInfer || c.kind == ExperimentKind::kMse) &&
        !s.random_sampling()) {
      throw ConfigError("solution '" + name + "' has no hidden sampled attribute; " +
                        std::string(experiment_name(c.kind)) +
                        " takes rsfd_* and rsrfd_* solutions");
    }
    if (!c.betas.empty() && s.random_sampling()) {
      throw ConfigError("betas apply to the smp solution only");
    }
  }
  if (c.models.empty()) throw ConfigError("models must not be empty");
  for (double s : c.s_multipliers) {
    if (!(s > 0.0)) throw ConfigError("s_multipliers must be positive");
  }
  for (double f : c.npk_fractions) {
    if (!(f > 0.0 && f < 1.0)) throw ConfigError("npk_fractions must lie in (0, 1)");
  }
  if (c.s_multipliers.empty() || c.npk_fractions.empty()) {
    throw ConfigError("s_multipliers and npk_fractions must not be empty");
  }
  if (!(c.prior_epsilon > 0.0)) throw ConfigError("prior_epsilon must be positive");
  try {
    (void)make_classifier(c.classifier);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace ldpsim
