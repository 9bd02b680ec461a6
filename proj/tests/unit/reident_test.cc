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

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "ldpsim/error.h"
#include "ldpsim/synthetic.h"

namespace ldpsim {
namespace {

// n records over three attributes of size 10, all distinct.
Dataset unique_records(std::size_t n) {
  const std::size_t ks[] = {10, 10, 10};
  std::vector<std::size_t> cells;
  for (std::size_t i = 0; i < n; ++i) {
    cells.push_back(i % 10);
    cells.push_back((i / 10) % 10);
    cells.push_back((i / 100) % 10);
  }
  return Dataset(MultiDomain::with_sizes(ks), cells);
}

SurveyPlan full_plan(std::size_t d, std::size_t surveys) {
  SurveyPlan plan;
  std::vector<std::size_t> all(d);
  for (std::size_t j = 0; j < d; ++j) all[j] = j;
  plan.subsets.assign(surveys, all);
  return plan;
}

double point(const ReidentOutcome& out, std::size_t surveys,
             std::size_t top_k) {
  for (const auto& p : out.points) {
    if (p.surveys == surveys && p.top_k == top_k) return p.rid_acc;
  }
  ADD_FAILURE() << "missing point";
  return -1.0;
}

ReidentConfig grr_config(double eps) {
  ReidentConfig cfg;
  cfg.scheme = CollectionScheme::parse("smp", Protocol::kGrr);
  cfg.privacy = {PrivacySpec::Kind::kEpsilon, eps};
  return cfg;
}

TEST(SurveyPlan, SubsetSizesAndDistinctness) {
  Rng rng(1);
  for (std::size_t d : {1u, 4u, 5u, 10u}) {
    const auto plan = draw_survey_plan(d, 20, rng);
    ASSERT_EQ(plan.surveys(), 20u);
    for (const auto& s : plan.subsets) {
      EXPECT_GE(s.size(), (d + 1) / 2);
      EXPECT_LE(s.size(), d);
      EXPECT_EQ(std::set<std::size_t>(s.begin(), s.end()).size(), s.size());
    }
    const auto cols = draw_partial_columns(d, rng);
    EXPECT_TRUE(std::is_sorted(cols.begin(), cols.end()));
    EXPECT_GE(cols.size(), (d + 1) / 2);
  }
}

TEST(Reident, NoiselessUniqueRecordsAreFound) {
  const Dataset data = unique_records(500);
  const auto out = run_reident_experiment(data, grr_config(50.0),
                                          full_plan(3, 3), {}, nullptr, 3);
  EXPECT_GE(point(out, 3, 1), 99.0);
  EXPECT_LT(point(out, 2, 1), point(out, 3, 1));
  // Accuracy is reported from the second survey on.
  for (const auto& p : out.points) EXPECT_GE(p.surveys, 2u);
}

TEST(Reident, NullAttackerMatchesBaseline) {
  const Dataset data = unique_records(1000);
  auto cfg = grr_config(50.0);
  cfg.null_attacker = true;
  const auto out =
      run_reident_experiment(data, cfg, full_plan(3, 3), {}, nullptr, 4);
  for (const auto& p : out.points) {
    const double base = static_cast<double>(p.top_k) / 1000.0;
    const double sigma = 100.0 * std::sqrt(base * (1 - base) / 1000.0);
    EXPECT_LT(std::abs(p.rid_acc - 100.0 * base), 3 * sigma + 1e-12);
  }
}

TEST(Reident, AccuracyGrowsWithSurveysAndEpsilon) {
  Rng data_rng(11);
  const Dataset data = adult_like_dataset(2000, data_rng);
  Rng plan_rng(12);
  const auto plan = draw_survey_plan(data.d(), 5, plan_rng);
  const auto low =
      run_reident_experiment(data, grr_config(2.0), plan, {}, nullptr, 5);
  const auto high =
      run_reident_experiment(data, grr_config(10.0), plan, {}, nullptr, 5);
  for (std::size_t sv = 2; sv < 5; ++sv) {
    EXPECT_LT(point(high, sv, 1), point(high, sv + 1, 1)) << sv;
  }
  EXPECT_LT(point(low, 5, 10), point(high, 5, 10));
  EXPECT_GT(point(high, 5, 1), 10 * 100.0 / 2000);
}

TEST(Reident, RandomSamplingPathRuns) {
  Rng data_rng(21);
  const Dataset data = adult_like_dataset(600, data_rng);
  Rng plan_rng(22);
  const auto plan = draw_survey_plan(data.d(), 3, plan_rng);
  ReidentConfig cfg = grr_config(5.0);
  cfg.scheme = CollectionScheme::parse("rsfd_grr");
  const auto out = run_reident_experiment(data, cfg, plan, {}, nullptr, 6);
  EXPECT_EQ(out.points.size(), 6u);
  for (const auto& p : out.points) {
    EXPECT_GE(p.rid_acc, 0.0);
    EXPECT_LE(p.rid_acc, 100.0);
  }
  cfg.scheme = CollectionScheme::parse("rsrfd_grr");
  EXPECT_THROW(run_reident_experiment(data, cfg, plan, {}, nullptr, 6),
               InvalidArgument);
}

TEST(Reident, DeterministicForSeed) {
  Rng data_rng(31);
  const Dataset data = adult_like_dataset(800, data_rng);
  Rng plan_rng(32);
  const auto plan = draw_survey_plan(data.d(), 4, plan_rng);
  const std::size_t cols[] = {0, 2, 4, 6, 8};
  const auto a =
      run_reident_experiment(data, grr_config(4.0), plan, cols, nullptr, 9);
  const auto b =
      run_reident_experiment(data, grr_config(4.0), plan, cols, nullptr, 9);
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_EQ(a.points[i].rid_acc, b.points[i].rid_acc);
  }
}

TEST(Reident, BayesErrorNearOneClampsBudget) {
  const Dataset data = unique_records(300);
  ReidentConfig cfg = grr_config(0.0);
  cfg.privacy = {PrivacySpec::Kind::kBayesError, 0.99};
  const auto out =
      run_reident_experiment(data, cfg, full_plan(3, 2), {}, nullptr, 2);
  EXPECT_TRUE(out.alpha_clamped);
  EXPECT_EQ(out.zero_budget_attributes, 3u);
  EXPECT_EQ(out.pass_through_attributes, 0u);

  cfg.privacy = {PrivacySpec::Kind::kBayesError, 0.01};
  const auto loose =
      run_reident_experiment(data, cfg, full_plan(3, 3), {}, nullptr, 2);
  EXPECT_EQ(loose.pass_through_attributes, 3u);
  EXPECT_EQ(point(loose, 3, 1), 100.0);
}

TEST(Reident, RejectsSplittingSolution) {
  const Dataset data = unique_records(50);
  ReidentConfig cfg = grr_config(1.0);
  cfg.scheme = CollectionScheme::parse("spl");
  EXPECT_THROW(run_reident_experiment(data, cfg, full_plan(3, 1), {}, nullptr, 1),
               InvalidArgument);
}

TEST(MultiCollection, MonteCarloMatchesProduct) {
  const std::size_t ks[] = {74, 7, 16};
  constexpr std::size_t kN = 50000;
  for (auto metric : {PrivacyMetric::kUniform, PrivacyMetric::kNonUniform}) {
    for (Protocol p : {Protocol::kGrr, Protocol::kOue}) {
      const double expected =
          multi_collection_acc(p, 5.0, ks, metric, AccuracyForm::kExact);
      const double got = empirical_multi_collection_acc(p, 5.0, ks, metric, kN, 3);
      const double pr = expected / 100.0;
      EXPECT_LT(std::abs(got - expected),
                3 * 100.0 * std::sqrt(pr * (1 - pr) / kN) + 1e-12)
          << protocol_name(p);
    }
  }
}

}  // namespace
}  // namespace ldpsim
