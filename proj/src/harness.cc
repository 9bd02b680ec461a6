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

#include "ldpsim/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "ldpsim/adversary.h"
#include "ldpsim/error.h"
#include "ldpsim/inference.h"
#include "ldpsim/multidim.h"
#include "ldpsim/reident.h"
#include "ldpsim/synthetic.h"

namespace ldpsim {
namespace {

// derive_seed tags; one per experiment kind plus shared per-run streams.
constexpr std::uint64_t kDataTag = 0xda7a;
constexpr std::uint64_t kSubsampleTag = 0x5ab5;
constexpr std::uint64_t kPlanTag = 0x91a9;
constexpr std::uint64_t kColumnsTag = 0xc015;
constexpr std::uint64_t kPriorTag = 0x9e10;
constexpr std::uint64_t kPointTag = 0x9017;

class Flags {
 public:
  template <typename T>
  Flags& add(const std::string& key, const T& value) {
    std::ostringstream s;
    s << value;
    return add_text(key, s.str());
  }
  Flags& add(const std::string& key, double value) {
    return add_text(key, format_real(value));
  }
  Flags& add_text(const std::string& key, const std::string& value) {
    if (!text_.empty()) text_ += ';';
    text_ += key + '=' + value;
    return *this;
  }
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

std::string join(const std::vector<std::size_t>& xs, char sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(xs[i]);
  }
  return out;
}

std::string protocol_extras(Protocol protocol, double epsilon, std::size_t k) {
  const auto params = protocol_params(protocol, epsilon, k);
  if (protocol == Protocol::kOlh) return "g=" + std::to_string(params.aux);
  if (protocol == Protocol::kSs) return "omega=" + std::to_string(params.aux);
  return {};
}

double binomial_se_percent(double percent, std::size_t n) {
  const double a = percent / 100.0;
  return 100.0 * std::sqrt(a * (1.0 - a) / static_cast<double>(n));
}

struct Task {
  std::string label;
  std::function<std::vector<ResultRow>()> run;
};

ResultRow base_row(const ExperimentConfig& c, std::size_t run,
                   std::uint64_t seed) {
  ResultRow r;
  r.experiment = std::string(experiment_name(c.kind));
  r.run = run;
  r.seed = seed;
  return r;
}

std::string form_name(AccuracyForm form) {
  return form == AccuracyForm::kPublished ? "published" : "exact";
}

void analytic_tasks(const ExperimentConfig& c, std::vector<Task>& tasks) {
  const std::uint64_t master = *c.seed;
  for (std::size_t pi = 0; pi < c.protocols.size(); ++pi) {
    for (std::size_t ei = 0; ei < c.epsilons.size(); ++ei) {
      for (std::size_t run = 0; run < c.runs; ++run) {
        const Protocol protocol = c.protocols[pi];
        const double eps = c.epsilons[ei];
        const std::uint64_t seed = derive_seed(master, {kPointTag, pi, ei, run});
        tasks.push_back(
            {std::string(protocol_name(protocol)) + " eps=" + format_real(eps) +
                 " run=" + std::to_string(run),
             [&c, protocol, eps, run, seed] {
               std::vector<ResultRow> rows;
               for (std::size_t k : c.ks) {
                 ResultRow r = base_row(c, run, seed);
                 r.protocol = std::string(protocol_name(protocol));
                 r.epsilon = eps;
                 r.metric = "acc";
                 r.value = analytic_acc(protocol, eps, k, c.form);
                 Flags f;
                 f.add("k", k).add_text("form", form_name(c.form));
                 if (auto x = protocol_extras(protocol, eps, k); !x.empty()) {
                   f.add_text(x.substr(0, x.find('=')), x.substr(x.find('=') + 1));
                 }
                 r.flags = f.str();
                 rows.push_back(std::move(r));
               }
               for (auto metric : {PrivacyMetric::kUniform, PrivacyMetric::kNonUniform}) {
                 ResultRow r = base_row(c, run, seed);
                 r.protocol = std::string(protocol_name(protocol));
                 r.solution = "smp";
                 r.epsilon = eps;
                 r.metric = metric == PrivacyMetric::kUniform ? "acc_uniform"
                                                              : "acc_non_uniform";
                 r.value = multi_collection_acc(protocol, eps, c.ks, metric, c.form);
                 r.flags = Flags()
                               .add_text("ks", join(c.ks, '|'))
                               .add("surveys", c.ks.size())
                               .add_text("form", form_name(c.form))
                               .str();
                 rows.push_back(std::move(r));
               }
               return rows;
             }});
      }
    }
  }
}

void oracle_attack_tasks(const ExperimentConfig& c, std::vector<Task>& tasks) {
  const std::uint64_t master = *c.seed;
  for (std::size_t pi = 0; pi < c.protocols.size(); ++pi) {
    for (std::size_t ei = 0; ei < c.epsilons.size(); ++ei) {
      for (std::size_t ki = 0; ki <= c.ks.size(); ++ki) {
        // ki == ks.size() is the multi-collection point.
        if (ki == c.ks.size() && !c.multi) continue;
        for (std::size_t run = 0; run < c.runs; ++run) {
          const Protocol protocol = c.protocols[pi];
          const double eps = c.epsilons[ei];
          const std::uint64_t seed =
              derive_seed(master, {kPointTag, pi, ei, ki, run});
          const bool multi = ki == c.ks.size();
          const std::size_t k = multi ? 0 : c.ks[ki];
          tasks.push_back(
              {std::string(protocol_name(protocol)) + " eps=" + format_real(eps) +
                   (multi ? " multi" : " k=" + std::to_string(k)) +
                   " run=" + std::to_string(run),
               [&c, protocol, eps, k, multi, run, seed] {
                 std::vector<ResultRow> rows;
                 if (!multi) {
                   ResultRow r = base_row(c, run, seed);
                   r.protocol = std::string(protocol_name(protocol));
                   r.epsilon = eps;
                   r.metric = "acc";
                   r.value = empirical_acc(protocol, eps, k, c.users, seed);
                   r.std_error = binomial_se_percent(r.value, c.users);
                   Flags f;
                   f.add("k", k).add("users", c.users);
                   if (auto x = protocol_extras(protocol, eps, k); !x.empty()) {
                     f.add_text(x.substr(0, x.find('=')), x.substr(x.find('=') + 1));
                   }
                   r.flags = f.str();
                   rows.push_back(r);
                   r.metric = "acc_analytic";
                   r.value = analytic_acc(protocol, eps, k, c.form);
                   r.std_error.reset();
                   r.flags = Flags().add("k", k).add_text("form", form_name(c.form)).str();
                   rows.push_back(std::move(r));
                   return rows;
                 }
                 for (auto metric : {PrivacyMetric::kUniform, PrivacyMetric::kNonUniform}) {
                   ResultRow r = base_row(c, run, seed);
                   r.protocol = std::string(protocol_name(protocol));
                   r.solution = "smp";
                   r.epsilon = eps;
                   r.metric = metric == PrivacyMetric::kUniform ? "acc_uniform"
                                                                : "acc_non_uniform";
                   r.value = empirical_multi_collection_acc(protocol, eps, c.ks,
                                                            metric, c.users, seed);
                   r.std_error = binomial_se_percent(r.value, c.users);
                   r.flags = Flags()
                                 .add_text("ks", join(c.ks, '|'))
                                 .add("users", c.users)
                                 .str();
                   rows.push_back(std::move(r));
                 }
                 return rows;
               }});
        }
      }
    }
  }
}

// Expands solution names; smp takes every configured protocol.
std::vector<CollectionScheme> schemes(const ExperimentConfig& c) {
  std::vector<CollectionScheme> out;
  for (const auto& name : c.solutions) {
    CollectionScheme s = CollectionScheme::parse(name);
    if (s.solution == Solution::kSmp || s.solution == Solution::kSpl) {
      for (Protocol p : c.protocols) out.push_back(CollectionScheme::parse(name, p));
    } else {
      out.push_back(s);
    }
  }
  return out;
}

bool any_priors(const std::vector<CollectionScheme>& ss) {
  return std::any_of(ss.begin(), ss.end(),
                     [](const CollectionScheme& s) { return s.uses_priors(); });
}

struct RunPriors {
  PriorSet priors;
  std::size_t fallbacks = 0;
};

RunPriors make_priors(const ExperimentConfig& c, const Dataset& data,
                      std::size_t run) {
  RunPriors out;
  const FrequencyTable truth = true_frequencies(data);
  switch (c.prior) {
    case PriorMode::kUniform:
      out.priors = uniform_priors(data.domain());
      break;
    case PriorMode::kTrue:
      out.priors = truth.freqs;
      break;
    case PriorMode::kLaplace: {
      Rng rng(derive_seed(*c.seed, {kPriorTag, run}));
      out.priors = laplace_prior(truth, c.prior_epsilon, data.d(), rng,
                                 &out.fallbacks);
      break;
    }
  }
  return out;
}

std::string prior_name(PriorMode mode) {
  switch (mode) {
    case PriorMode::kLaplace:
      return "laplace";
    case PriorMode::kUniform:
      return "uniform";
    case PriorMode::kTrue:
      return "true";
  }
  return "?";
}

struct Shared {
  Dataset data;
  std::vector<RunPriors> priors;
  std::vector<SurveyPlan> plans;
  std::vector<std::vector<std::size_t>> columns;
  Histograms truth;
};

void reident_tasks(const ExperimentConfig& c, const Shared& shared,
                   std::vector<Task>& tasks) {
  const std::uint64_t master = *c.seed;
  const auto ss = schemes(c);
  std::vector<PrivacySpec> specs;
  for (double e : c.epsilons) specs.push_back({PrivacySpec::Kind::kEpsilon, e});
  for (double b : c.betas) specs.push_back({PrivacySpec::Kind::kBayesError, b});
  for (const auto& scheme : ss) {
    for (std::size_t pi = 0; pi < specs.size(); ++pi) {
      for (std::size_t run = 0; run < c.runs; ++run) {
        const PrivacySpec spec = specs[pi];
        const std::uint64_t seed = derive_seed(master, {kPointTag, pi, run});
        tasks.push_back(
            {scheme.name() + "/" + scheme.protocol_label() +
                 (spec.kind == PrivacySpec::Kind::kEpsilon ? " eps=" : " beta=") +
                 format_real(spec.value) +
                 " run=" + std::to_string(run),
             [&c, &shared, scheme, spec, run, seed] {
               ReidentConfig rc;
               rc.scheme = scheme;
               rc.privacy = spec;
               rc.metric = c.metric;
               rc.top_ks = c.top_k;
               rc.null_attacker = c.null_attacker;
               rc.inference_model = c.models.front();
               rc.synthetic_multiplier = c.s_multipliers.front();
               rc.compromised_fraction = c.npk_fractions.front();
               rc.classifier = c.classifier;
               const PriorSet* priors =
                   scheme.uses_priors() ? &shared.priors[run].priors : nullptr;
               const auto outcome = run_reident_experiment(
                   shared.data, rc, shared.plans[run], shared.columns[run],
                   priors, seed);

               Flags common;
               common.add_text("knowledge",
                               c.knowledge == KnowledgeMode::kFull ? "fk" : "pk")
                   .add_text("metric", c.metric == PrivacyMetric::kUniform
                                           ? "uniform"
                                           : "non_uniform")
                   .add("null_attacker", c.null_attacker ? 1 : 0)
                   .add("n", shared.data.n());
               if (scheme.random_sampling()) {
                 common.add_text("inference", std::string(attack_model_name(rc.inference_model)))
                     .add_text("classifier", c.classifier);
               }
               if (spec.kind == PrivacySpec::Kind::kBayesError) {
                 common.add("alpha_clamped", outcome.alpha_clamped ? 1 : 0)
                     .add("pass_through", outcome.pass_through_attributes)
                     .add("zero_budget", outcome.zero_budget_attributes);
               }
               common.add("exhausted_fallbacks", outcome.exhausted_fallbacks)
                   .add("empty_profiles", outcome.empty_profiles);
               std::vector<std::string> plan;
               for (const auto& s : shared.plans[run].subsets) plan.push_back(join(s, '.'));
               std::string plan_text;
               for (std::size_t i = 0; i < plan.size(); ++i) {
                 plan_text += (i ? "/" : "") + plan[i];
               }
               common.add_text("plan", plan_text);
               if (c.knowledge == KnowledgeMode::kPartial) {
                 common.add_text("columns", join(shared.columns[run], '.'));
               }

               std::vector<ResultRow> rows;
               for (const auto& p : outcome.points) {
                 ResultRow r = base_row(c, run, seed);
                 r.protocol = scheme.protocol_label();
                 r.solution = scheme.name();
                 if (spec.kind == PrivacySpec::Kind::kEpsilon) {
                   r.epsilon = spec.value;
                 } else {
                   r.beta = spec.value;
                 }
                 r.metric = "rid_acc_top" + std::to_string(p.top_k);
                 r.value = p.rid_acc;
                 r.std_error = binomial_se_percent(p.rid_acc, shared.data.n());
                 r.flags = Flags().add("surveys", p.surveys).str() + ";" + common.str();
                 rows.push_back(r);
                 r.metric = "rid_baseline_top" + std::to_string(p.top_k);
                 r.value = 100.0 * static_cast<double>(std::min(p.top_k, shared.data.n())) /
                           static_cast<double>(shared.data.n());
                 r.std_error.reset();
                 rows.push_back(std::move(r));
               }
               return rows;
             }});
      }
    }
  }
}

void attr_infer_tasks(const ExperimentConfig& c, const Shared& shared,
                      std::vector<Task>& tasks) {
  const std::uint64_t master = *c.seed;
  const auto ss = schemes(c);
  for (const auto& scheme : ss) {
    for (std::size_t ei = 0; ei < c.epsilons.size(); ++ei) {
      for (std::size_t mi = 0; mi < c.models.size(); ++mi) {
        const AttackModel model = c.models[mi];
        const std::size_t s_count = model == AttackModel::kPk ? 1 : c.s_multipliers.size();
        const std::size_t f_count = model == AttackModel::kNk ? 1 : c.npk_fractions.size();
        for (std::size_t si = 0; si < s_count; ++si) {
          for (std::size_t fi = 0; fi < f_count; ++fi) {
            for (std::size_t run = 0; run < c.runs; ++run) {
              const double eps = c.epsilons[ei];
              const std::uint64_t seed =
                  derive_seed(master, {kPointTag, ei, mi, si, fi, run});
              AttrInferenceConfig ac;
              ac.scheme = scheme;
              ac.epsilon = eps;
              ac.model = model;
              ac.synthetic_multiplier = c.s_multipliers[si];
              ac.compromised_fraction = c.npk_fractions[fi];
              ac.classifier = c.classifier;
              tasks.push_back(
                  {scheme.name() + " eps=" + format_real(eps) + " model=" +
                       std::string(attack_model_name(model)) +
                       " run=" + std::to_string(run),
                   [&c, &shared, ac, run, seed] {
                     const PriorSet* priors = ac.scheme.uses_priors()
                                                  ? &shared.priors[run].priors
                                                  : nullptr;
                     const auto o = run_attr_inference(shared.data, ac, priors, seed);
                     Flags f;
                     f.add_text("model", std::string(attack_model_name(ac.model)));
                     if (ac.model != AttackModel::kPk) {
                       f.add_text("s", format_real(ac.synthetic_multiplier) + "n");
                     }
                     if (ac.model != AttackModel::kNk) {
                       f.add_text("npk", format_real(ac.compromised_fraction) + "n");
                     }
                     f.add_text("classifier", ac.classifier)
                         .add("train_rows", o.train_rows)
                         .add("test_rows", o.test_rows)
                         .add("constant_classifier", o.constant_classifier ? 1 : 0);
                     if (ac.scheme.uses_priors()) {
                       f.add_text("prior", prior_name(c.prior))
                           .add("prior_fallbacks", shared.priors[run].fallbacks);
                     }
                     std::vector<ResultRow> rows;
                     ResultRow r = base_row(c, run, seed);
                     r.protocol = ac.scheme.protocol_label();
                     r.solution = ac.scheme.name();
                     r.epsilon = ac.epsilon;
                     r.metric = "aif_acc";
                     r.value = o.aif_acc;
                     r.std_error = binomial_se_percent(o.aif_acc, std::max<std::size_t>(o.test_rows, 1));
                     r.flags = f.str();
                     rows.push_back(r);
                     r.metric = "aif_baseline";
                     r.value = o.baseline;
                     r.std_error.reset();
                     rows.push_back(std::move(r));
                     return rows;
                   }});
            }
          }
        }
      }
    }
  }
}

void mse_tasks(const ExperimentConfig& c, const Shared& shared,
               std::vector<Task>& tasks) {
  const std::uint64_t master = *c.seed;
  const auto ss = schemes(c);
  for (const auto& scheme : ss) {
    for (std::size_t ei = 0; ei < c.epsilons.size(); ++ei) {
      for (std::size_t run = 0; run < c.runs; ++run) {
        const double eps = c.epsilons[ei];
        const std::uint64_t seed = derive_seed(master, {kPointTag, ei, run});
        tasks.push_back(
            {scheme.name() + " eps=" + format_real(eps) +
                 " run=" + std::to_string(run),
             [&c, &shared, scheme, eps, run, seed] {
               const PriorSet* priors =
                   scheme.uses_priors() ? &shared.priors[run].priors : nullptr;
               const auto sanitizer = RandomSamplingSanitizer::for_scheme(
                   scheme, shared.data.domain(), eps, priors);
               auto counts = sanitizer.zero_counts();
               for (std::size_t i = 0; i < shared.data.n(); ++i) {
                 Rng rng(derive_seed(seed, {i}));
                 sanitizer.accumulate(
                     sanitizer.sanitize(shared.data.row(i), rng).tuple, counts);
               }
               const auto est = sanitizer.estimate_from_counts(counts, shared.data.n());
               ResultRow r = base_row(c, run, seed);
               r.protocol = scheme.protocol_label();
               r.solution = scheme.name();
               r.epsilon = eps;
               r.metric = "mse_avg";
               r.value = mse_avg(shared.truth, est);
               Flags f;
               f.add("n", shared.data.n()).add("d", shared.data.d());
               if (scheme.uses_priors()) {
                 f.add_text("prior", prior_name(c.prior));
                 if (c.prior == PriorMode::kLaplace) {
                   f.add("prior_epsilon", c.prior_epsilon)
                       .add("prior_sensitivity", "2/n")
                       .add("prior_fallbacks", shared.priors[run].fallbacks);
                 }
               }
               r.flags = f.str();
               return std::vector<ResultRow>{std::move(r)};
             }});
      }
    }
  }
}

}  // namespace

void parallel_for(std::size_t tasks, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errors(tasks);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(threads, tasks));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Dataset resolve_dataset(const ExperimentConfig& c) {
  if (c.dataset.empty()) throw ConfigError("no dataset configured");
  Dataset data;
  if (c.dataset.starts_with("synthetic:")) {
    std::vector<std::string> parts;
    std::stringstream ss(c.dataset);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() < 2 || parts.size() > 3) {
      throw ConfigError("dataset must be synthetic:<name>[:n]");
    }
    std::size_t n = parts[1] == "adult_like" ? 45222 : 20000;
    if (parts.size() == 3) {
      try {
        n = static_cast<std::size_t>(std::stoull(parts[2]));
      } catch (const std::exception&) {
        throw ConfigError("bad synthetic row count '" + parts[2] + "'");
      }
    }
    if (n == 0) throw ConfigError("synthetic datasets need n >= 1");
    Rng rng(derive_seed(*c.seed, {kDataTag}));
    if (parts[1] == "adult_like") {
      data = adult_like_dataset(n, rng);
    } else if (parts[1] == "zipf") {
      data = zipf_dataset(c.ks, c.zipf_exponent, n, rng);
    } else if (parts[1] == "uniform") {
      data = uniform_dataset(c.ks, n, rng);
    } else {
      throw ConfigError("unknown synthetic dataset '" + parts[1] + "'");
    }
  } else {
    Schema schema;
    schema.columns = c.columns;
    if (!c.identity_column.empty()) schema.identity_column = c.identity_column;
    data = load_dataset(c.dataset, schema);
  }
  if (c.subsample > 0 && c.subsample < data.n()) {
    Rng rng(derive_seed(*c.seed, {kSubsampleTag}));
    auto rows = sample_without_replacement(data.n(), c.subsample, rng);
    std::sort(rows.begin(), rows.end());
    data = data.rows(rows);
  }
  return data;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& c) {
  if (!c.seed) throw ConfigError("a seed is required");
  Shared shared;
  std::vector<Task> tasks;
  switch (c.kind) {
    case ExperimentKind::kAnalytic:
      analytic_tasks(c, tasks);
      break;
    case ExperimentKind::kOracleAttack:
      oracle_attack_tasks(c, tasks);
      break;
    case ExperimentKind::kReident:
    case ExperimentKind::kAttrInfer:
    case ExperimentKind::kMse: {
      shared.data = resolve_dataset(c);
      const auto ss = schemes(c);
      for (const auto& s : ss) {
        for (std::size_t j = 0; j < shared.data.d(); ++j) {
          if (shared.data.domain().k(j) < 2 &&
              (s.random_sampling() || c.kind == ExperimentKind::kReident)) {
            throw ConfigError("attribute '" + shared.data.domain()[j].name() +
                              "' has a single value; randomized protocols need k >= 2");
          }
        }
      }
      shared.truth = true_frequencies(shared.data).freqs;
      if (any_priors(ss)) {
        for (std::size_t run = 0; run < c.runs; ++run) {
          shared.priors.push_back(make_priors(c, shared.data, run));
        }
      }
      if (c.kind == ExperimentKind::kReident) {
        for (std::size_t run = 0; run < c.runs; ++run) {
          Rng plan_rng(derive_seed(*c.seed, {kPlanTag, run}));
          shared.plans.push_back(draw_survey_plan(shared.data.d(), c.surveys, plan_rng));
          Rng col_rng(derive_seed(*c.seed, {kColumnsTag, run}));
          shared.columns.push_back(c.knowledge == KnowledgeMode::kPartial
                                       ? draw_partial_columns(shared.data.d(), col_rng)
                                       : std::vector<std::size_t>{});
        }
        reident_tasks(c, shared, tasks);
      } else if (c.kind == ExperimentKind::kAttrInfer) {
        attr_infer_tasks(c, shared, tasks);
      } else {
        mse_tasks(c, shared, tasks);
      }
      break;
    }
  }

  std::vector<std::vector<ResultRow>> results(tasks.size());
  parallel_for(tasks.size(), c.threads, [&](std::size_t i) {
    try {
      results[i] = tasks[i].run();
    } catch (const ConfigError& e) {
      throw ConfigError("grid point " + tasks[i].label + ": " + e.what());
    } catch (const std::exception& e) {
      throw Error("grid point " + tasks[i].label + ": " + e.what());
    }
  });
  std::vector<ResultRow> rows;
  for (auto& r : results) {
    rows.insert(rows.end(), std::make_move_iterator(r.begin()),
                std::make_move_iterator(r.end()));
  }
  return rows;
}

}  // namespace ldpsim
