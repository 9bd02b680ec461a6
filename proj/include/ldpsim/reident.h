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

#ifndef LDPSIM_REIDENT_H_
#define LDPSIM_REIDENT_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ldpsim/adversary.h"
#include "ldpsim/data.h"
#include "ldpsim/inference.h"
#include "ldpsim/multidim.h"

namespace ldpsim {

// Per-collection privacy: an epsilon, or a Bayes error target mapped to a PIE
// budget alpha and then to a per-attribute epsilon (or pass-through).
struct PrivacySpec {
  enum class Kind { kEpsilon, kBayesError };
  Kind kind = Kind::kEpsilon;
  double value = 1.0;
};

// Attribute subsets offered in each survey.
struct SurveyPlan {
  std::vector<std::vector<std::size_t>> subsets;

  std::size_t surveys() const { return subsets.size(); }
};

// Each survey asks a uniformly chosen number of attributes in
// [ceil(d/2), d], chosen uniformly at random.
SurveyPlan draw_survey_plan(std::size_t d, std::size_t surveys, Rng& rng);

// Background columns for partial knowledge: a uniform subset whose size is
// uniform in [ceil(d/2), d], sorted.
std::vector<std::size_t> draw_partial_columns(std::size_t d, Rng& rng);

struct ReidentConfig {
  CollectionScheme scheme;
  PrivacySpec privacy;
  // kUniform: users pick an attribute they have not reported yet.
  // kNonUniform: attributes are sampled with replacement (SMP memoizes).
  PrivacyMetric metric = PrivacyMetric::kUniform;
  std::vector<std::size_t> top_ks = {1, 5, 10};
  // Ignore the profiles and rank identities at random.
  bool null_attacker = false;
  // RS+FD and RS+RFD: how the attacker learns which slot is real before
  // reading a value from it.
  AttackModel inference_model = AttackModel::kNk;
  double synthetic_multiplier = 1.0;
  double compromised_fraction = 0.1;
  std::string classifier = "naive_bayes";
};

struct ReidentPoint {
  // Number of surveys folded into the profiles (2..surveys).
  std::size_t surveys = 0;
  std::size_t top_k = 0;
  double rid_acc = 0.0;
};

struct ReidentOutcome {
  std::vector<ReidentPoint> points;
  // The Bayes error target pushed alpha below zero; it was clamped.
  bool alpha_clamped = false;
  // Attributes reported raw under PIE.
  std::size_t pass_through_attributes = 0;
  // Attributes whose PIE budget was zero; randomized at a vanishing epsilon.
  std::size_t zero_budget_attributes = 0;
  // Uniform mode: reports where every offered attribute had already been
  // used and the user fell back to sampling with replacement.
  std::size_t exhausted_fallbacks = 0;
  // Profiles the background could not match; ranked at random.
  std::size_t empty_profiles = 0;
};

// Epsilon standing in for a zero PIE budget.
inline constexpr double kZeroBudgetEpsilon = 1e-6;

// One run of the re-identification attack. Every user of `dataset` takes
// part in every survey of `plan`; the background is the dataset itself
// restricted to `background_columns` (all columns when empty). RID-ACC is
// reported for every top-k and every survey count from 2 on.
ReidentOutcome run_reident_experiment(
    const Dataset& dataset, const ReidentConfig& config,
    const SurveyPlan& plan, std::span<const std::size_t> background_columns,
    const PriorSet* priors, std::uint64_t seed);

// Monte-Carlo counterpart of multi_collection_acc: n users with uniform true
// values report one attribute per survey with SMP over d = |ks| surveys; the
// result is the percentage whose d attributes were all reported and guessed
// right.
double empirical_multi_collection_acc(Protocol protocol, double epsilon,
                                      std::span<const std::size_t> ks,
                                      PrivacyMetric metric, std::size_t n,
                                      std::uint64_t seed);

}  // namespace ldpsim

#endif  // LDPSIM_REIDENT_H_
