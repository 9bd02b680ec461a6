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

#include "ldpsim/reident.h"

#include <algorithm>
#include <cmath>

#include "ldpsim/error.h"
#include "ldpsim/privacy_budget.h"

namespace ldpsim {
namespace {

constexpr std::uint64_t kUserStream = 0x7573;
constexpr std::uint64_t kPredictStream = 0x707264;
constexpr std::uint64_t kMatchStream = 0x6d7463;
constexpr std::uint64_t kSplitStream = 0x73706c;
constexpr std::uint64_t kSyntheticStream = 0x73796e;

std::size_t half_up(std::size_t d) { return (d + 1) / 2; }

bool covered(const AttackerProfile& profile, const BackgroundKnowledge& bk) {
  for (std::size_t j = 0; j < bk.d(); ++j) {
    if (profile.predicted()[j] && bk.known(j)) return true;
  }
  return false;
}

}  // namespace

SurveyPlan draw_survey_plan(std::size_t d, std::size_t surveys, Rng& rng) {
  if (d == 0) throw InvalidArgument("survey plan needs d >= 1");
  SurveyPlan plan;
  const std::size_t low = half_up(d);
  for (std::size_t sv = 0; sv < surveys; ++sv) {
    const std::size_t size = low + rng.index(d - low + 1);
    plan.subsets.push_back(sample_without_replacement(d, size, rng));
  }
  return plan;
}

std::vector<std::size_t> draw_partial_columns(std::size_t d, Rng& rng) {
  if (d == 0) throw InvalidArgument("partial columns need d >= 1");
  const std::size_t low = half_up(d);
  const std::size_t size = low + rng.index(d - low + 1);
  auto cols = sample_without_replacement(d, size, rng);
  std::sort(cols.begin(), cols.end());
  return cols;
}

ReidentOutcome run_reident_experiment(
    const Dataset& dataset, const ReidentConfig& config,
    const SurveyPlan& plan, std::span<const std::size_t> background_columns,
    const PriorSet* priors, std::uint64_t seed) {
  const std::size_t n = dataset.n();
  const std::size_t d = dataset.d();
  const CollectionScheme& scheme = config.scheme;
  if (n < 2) throw InvalidArgument("re-identification needs n >= 2");
  if (scheme.solution == Solution::kSpl) {
    throw InvalidArgument("re-identification supports SMP, RS+FD and RS+RFD");
  }
  if (config.top_ks.empty()) throw InvalidArgument("no top-k values");
  for (const auto& subset : plan.subsets) {
    if (subset.empty()) throw InvalidArgument("survey without attributes");
    for (std::size_t j : subset) {
      if (j >= d) throw InvalidArgument("survey attribute out of range");
    }
  }
  if (scheme.uses_priors()) {
    if (priors == nullptr) throw InvalidArgument("RS+RFD needs a prior set");
    validate_priors(*priors, dataset.domain());
  }

  ReidentOutcome out;
  const auto ks = dataset.domain().ks();
  const BackgroundKnowledge bk(dataset.cells(), ks, background_columns);
  const std::size_t max_k =
      *std::max_element(config.top_ks.begin(), config.top_ks.end());
  const SamplingMode mode = config.metric == PrivacyMetric::kUniform
                                ? SamplingMode::kWithoutReplacement
                                : SamplingMode::kWithReplacement;

  // Per-attribute budget. Only SMP supports the PIE path.
  std::vector<double> eps(d, config.privacy.value);
  std::vector<bool> pass(d, false);
  if (config.privacy.kind == PrivacySpec::Kind::kBayesError) {
    if (scheme.random_sampling()) {
      throw InvalidArgument("the Bayes error privacy spec applies to SMP only");
    }
    const auto ab = alpha_from_bayes_error(config.privacy.value, n);
    out.alpha_clamped = ab.clamped;
    for (std::size_t j = 0; j < d; ++j) {
      const auto e = epsilon_from_alpha(ab.alpha, n, ks[j]);
      switch (e.kind) {
        case EpsilonOrPassThrough::Kind::kPassThrough:
          pass[j] = true;
          ++out.pass_through_attributes;
          break;
        case EpsilonOrPassThrough::Kind::kZeroBudget:
          eps[j] = kZeroBudgetEpsilon;
          ++out.zero_budget_attributes;
          break;
        case EpsilonOrPassThrough::Kind::kEpsilon:
          eps[j] = e.epsilon;
          break;
      }
    }
  }

  std::vector<AttackerProfile> profiles;
  profiles.reserve(n);
  for (std::size_t i = 0; i < n; ++i) profiles.emplace_back(i, d);
  std::vector<SmpUserState> states(n);

  std::vector<ProtocolParams> params(d);
  if (!scheme.random_sampling()) {
    for (std::size_t j = 0; j < d; ++j) {
      if (!pass[j]) params[j] = protocol_params(scheme.protocol, eps[j], ks[j]);
    }
  }

  std::vector<std::size_t> values;
  for (std::size_t sv = 0; sv < plan.surveys(); ++sv) {
    const auto& subset = plan.subsets[sv];

    if (!scheme.random_sampling()) {
      for (std::size_t i = 0; i < n; ++i) {
        Rng rng(derive_seed(seed, {kUserStream, i, sv}));
        SmpUserState& state = states[i];
        std::size_t j = 0;
        try {
          j = smp_choose_attribute(state, mode, subset, d, rng);
        } catch (const SamplingExhausted&) {
          ++out.exhausted_fallbacks;
          j = smp_choose_attribute(state, SamplingMode::kWithReplacement,
                                   subset, d, rng);
        }
        const std::size_t v = dataset.at(i, j);
        if (pass[j]) {
          profiles[i].observe(j, v);
          continue;
        }
        const SanitizedReport* report = state.memo(j, scheme.protocol, eps[j]);
        if (report == nullptr) {
          state.remember(j, scheme.protocol, eps[j],
                         randomize(v, params[j], rng));
          report = state.memo(j, scheme.protocol, eps[j]);
        }
        profiles[i].observe(j, predict_value(*report, params[j], rng));
      }
    } else {
      const MultiDomain sub = dataset.domain().select(subset);
      PriorSet sub_priors;
      if (scheme.uses_priors()) {
        for (std::size_t j : subset) sub_priors.push_back((*priors)[j]);
      }
      const auto sanitizer = RandomSamplingSanitizer::for_scheme(
          scheme, sub, config.privacy.value,
          scheme.uses_priors() ? &sub_priors : nullptr);

      std::vector<LabeledTuple> tuples;
      tuples.reserve(n);
      std::vector<std::size_t> eligible;
      for (std::size_t i = 0; i < n; ++i) {
        Rng rng(derive_seed(seed, {kUserStream, i, sv}));
        SmpUserState& state = states[i];
        eligible.clear();
        if (mode == SamplingMode::kWithoutReplacement) {
          for (std::size_t t = 0; t < subset.size(); ++t) {
            if (!state.used(subset[t])) eligible.push_back(t);
          }
          if (eligible.empty()) ++out.exhausted_fallbacks;
        }
        const std::size_t t = eligible.empty()
                                  ? rng.index(subset.size())
                                  : eligible[rng.index(eligible.size())];
        state.mark_used(subset[t]);
        values.clear();
        for (std::size_t j : subset) values.push_back(dataset.at(i, j));
        tuples.push_back(sanitizer.sanitize_at(values, t, rng));
      }

      // The attacker first guesses the real slot, then reads a value off it.
      Histograms estimated;
      if (config.inference_model != AttackModel::kPk) {
        auto counts = sanitizer.zero_counts();
        for (const auto& t : tuples) sanitizer.accumulate(t.tuple, counts);
        estimated = sanitizer.estimate_from_counts(counts, n);
      }
      std::vector<std::size_t> order;
      std::size_t n_pk = 0;
      if (config.inference_model != AttackModel::kNk) {
        n_pk = static_cast<std::size_t>(std::llround(
            config.compromised_fraction * static_cast<double>(n)));
        if (n_pk == 0 || n_pk > n) {
          throw InvalidArgument("compromised fraction gives no usable profiles");
        }
        Rng split(derive_seed(seed, {kSplitStream, sv}));
        order = sample_without_replacement(n, n_pk, split);
      }
      std::vector<LabeledTuple> compromised;
      for (std::size_t i : order) compromised.push_back(tuples[i]);
      const std::size_t s = static_cast<std::size_t>(std::llround(
          config.synthetic_multiplier * static_cast<double>(n)));
      Rng synth(derive_seed(seed, {kSyntheticStream, sv}));
      const LearningSet train = build_learning_set(
          config.inference_model, sanitizer,
          config.inference_model == AttackModel::kPk ? nullptr : &estimated, s,
          compromised, synth);
      auto classifier = make_classifier(config.classifier);
      classifier->train(train);

      std::vector<bool> known_label(n, false);
      for (std::size_t i : order) known_label[i] = true;
      std::vector<std::uint32_t> x;
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t t = tuples[i].sampled;
        if (!known_label[i]) {
          x.clear();
          encode_features(tuples[i].tuple, x);
          t = classifier->predict(x);
        }
        Rng rng(derive_seed(seed, {kPredictStream, i, sv}));
        profiles[i].observe(
            subset[t], predict_value(tuples[i].tuple.reports[t],
                                     sanitizer.slot_params(t), rng));
      }
    }

    if (sv == 0) continue;
    std::vector<std::size_t> hits(config.top_ks.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      Rng rng(derive_seed(seed, {kMatchStream, i, sv}));
      std::vector<std::size_t> ranking;
      if (config.null_attacker) {
        ranking = random_ranking(n, max_k, rng);
      } else if (covered(profiles[i], bk)) {
        ranking = reident_match(profiles[i], bk, max_k, rng);
      } else {
        ++out.empty_profiles;
        ranking = random_ranking(n, max_k, rng);
      }
      for (std::size_t t = 0; t < config.top_ks.size(); ++t) {
        const std::size_t depth = std::min(config.top_ks[t], ranking.size());
        if (std::find(ranking.begin(), ranking.begin() + depth, i) !=
            ranking.begin() + depth) {
          ++hits[t];
        }
      }
    }
    for (std::size_t t = 0; t < config.top_ks.size(); ++t) {
      out.points.push_back(
          {sv + 1, config.top_ks[t],
           100.0 * static_cast<double>(hits[t]) / static_cast<double>(n)});
    }
  }
  return out;
}

double empirical_multi_collection_acc(Protocol protocol, double epsilon,
                                      std::span<const std::size_t> ks,
                                      PrivacyMetric metric, std::size_t n,
                                      std::uint64_t seed) {
  const std::size_t d = ks.size();
  if (d == 0 || n == 0) throw InvalidArgument("need d >= 1 and n >= 1");
  std::vector<ProtocolParams> params;
  for (std::size_t k : ks) params.push_back(protocol_params(protocol, epsilon, k));
  const SamplingMode mode = metric == PrivacyMetric::kUniform
                                ? SamplingMode::kWithoutReplacement
                                : SamplingMode::kWithReplacement;
  std::size_t complete = 0;
  std::vector<std::size_t> truth(d);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, {i}));
    for (std::size_t j = 0; j < d; ++j) truth[j] = rng.index(ks[j]);
    SmpUserState state;
    AttackerProfile profile(i, d);
    for (std::size_t sv = 0; sv < d; ++sv) {
      const std::size_t j = smp_choose_attribute(state, mode, {}, d, rng);
      const SanitizedReport* report = state.memo(j, protocol, epsilon);
      if (report == nullptr) {
        state.remember(j, protocol, epsilon, randomize(truth[j], params[j], rng));
        report = state.memo(j, protocol, epsilon);
      }
      profile.observe(j, predict_value(*report, params[j], rng));
    }
    if (state.used_count() != d) continue;
    bool all = true;
    for (std::size_t j = 0; j < d && all; ++j) {
      all = profile.predicted()[j] == truth[j];
    }
    if (all) ++complete;
  }
  return 100.0 * static_cast<double>(complete) / static_cast<double>(n);
}

}  // namespace ldpsim
