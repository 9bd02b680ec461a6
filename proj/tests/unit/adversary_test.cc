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


#include "ldpsim/adversary.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ldpsim/error.h"
#include "ldpsim/stats.h"

namespace ldpsim {
namespace {

// Attacker accuracy on unary encodings by enumerating every bit vector.
double brute_force_unary_acc(double p, double q, std::size_t k) {
  double acc = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    double prob = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double on = i == 0 ? p : q;
      prob *= (mask & (1u << i)) ? on : 1.0 - on;
    }
    const int ones = __builtin_popcount(mask);
    if (ones == 0) {
      acc += prob / static_cast<double>(k);
    } else if (mask & 1u) {
      acc += prob / ones;
    }
  }
  return 100.0 * acc;
}

TEST(PredictValue, GrrIdentity) {
  Rng rng(1);
  const auto params = protocol_params(Protocol::kGrr, 1.0, 8);
  EXPECT_EQ(predict_value(ValueReport{5}, params, rng),
            std::optional<std::size_t>(5));
}

TEST(PredictValue, EmptyBitsGuessUniformly) {
  Rng rng(2);
  const auto params = protocol_params(Protocol::kOue, 1.0, 4);
  const BitsReport zeros{{0, 0, 0, 0}};
  std::vector<std::uint64_t> counts(4);
  for (int i = 0; i < 40000; ++i) ++counts[*predict_value(zeros, params, rng)];
  EXPECT_GT(chi_square_gof(counts, std::vector<double>(4, 0.25)).p_value, 0.01);
}

TEST(PredictValue, PicksFromSupportSet) {
  Rng rng(3);
  const auto ss = protocol_params(Protocol::kSs, 1.0, 9);
  const SubsetReport subset{{2, 5, 7}};
  for (int i = 0; i < 100; ++i) {
    const auto guess = *predict_value(subset, ss, rng);
    EXPECT_TRUE(guess == 2 || guess == 5 || guess == 7);
  }
  const auto olh = protocol_params(Protocol::kOlh, 1.0, 9);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const HashedReport r{seed, 0};
    const auto guess = predict_value(r, olh, rng);
    if (guess) EXPECT_TRUE(supports(r, *guess, olh));
  }
  EXPECT_THROW(predict_value(subset, olh, rng), VariantMismatch);
}

TEST(AnalyticAcc, Examples) {
  EXPECT_NEAR(analytic_acc(Protocol::kGrr, 1.0, 74),
              100 * std::exp(1.0) / (std::exp(1.0) + 73), 1e-12);
  EXPECT_NEAR(analytic_acc(Protocol::kGrr, 1.0, 74), 3.59, 0.01);
  EXPECT_NEAR(analytic_acc(Protocol::kGrr, 10.0, 2), 99.995, 1e-3);
  EXPECT_NEAR(analytic_acc(Protocol::kOlh, std::log(3.0), 8), 25.0, 1e-12);
  EXPECT_NEAR(analytic_acc(Protocol::kSs, 1e-9, 10), 10.0, 1e-6);
}

TEST(AnalyticAcc, UnaryMatchesEnumeration) {
  for (Protocol p : {Protocol::kSue, Protocol::kOue}) {
    for (std::size_t k : {2u, 3u, 4u, 6u}) {
      for (double eps : {0.5, 1.0, 2.0}) {
        const auto prm = protocol_params(p, eps, k);
        EXPECT_NEAR(analytic_acc(p, eps, k),
                    brute_force_unary_acc(prm.p, prm.q, k), 1e-9);
      }
    }
  }
}

TEST(AnalyticAcc, ExactFormsMatchSimulation) {
  constexpr std::size_t kN = 40000;
  for (Protocol p : kAllProtocols) {
    for (double eps : {std::log(3.0), 2.5}) {
      const double expected = analytic_acc(p, eps, 8, AccuracyForm::kExact);
      const double got = empirical_acc(p, eps, 8, kN, 17);
      const double pr = expected / 100.0;
      const double sigma = 100.0 * std::sqrt(pr * (1 - pr) / kN);
      EXPECT_LT(std::abs(got - expected), 3 * sigma)
          << protocol_name(p) << " eps=" << eps;
    }
  }
}

TEST(MultiCollectionAcc, ProductIdentities) {
  const std::size_t one[] = {16};
  EXPECT_NEAR(multi_collection_acc(Protocol::kGrr, 2.0, one,
                                   PrivacyMetric::kUniform),
              analytic_acc(Protocol::kGrr, 2.0, 16), 1e-12);
  const std::size_t ks[] = {74, 7, 16};
  for (Protocol p : kAllProtocols) {
    const double u = multi_collection_acc(p, 3.0, ks, PrivacyMetric::kUniform);
    const double nu =
        multi_collection_acc(p, 3.0, ks, PrivacyMetric::kNonUniform);
    EXPECT_NEAR(nu, u * 6.0 / 27.0, 1e-12);
  }
  double previous = 0.0;
  for (int eps = 1; eps <= 10; ++eps) {
    const double acc =
        multi_collection_acc(Protocol::kGrr, eps, ks, PrivacyMetric::kUniform);
    EXPECT_GT(acc, previous);
    previous = acc;
  }
}

TEST(AttackerProfile, UnknownNeverErasesKnown) {
  AttackerProfile profile(4, 3);
  profile.observe(1, 6);
  profile.observe(1, std::nullopt);
  EXPECT_EQ(profile.predicted()[1], std::optional<std::size_t>(6));
  profile.observe(1, 2);
  EXPECT_EQ(profile.predicted()[1], std::optional<std::size_t>(2));
  EXPECT_EQ(profile.known_count(), 1u);
  EXPECT_THROW(profile.observe(3, 0), InvalidArgument);
}

TEST(ReidentMatch, UniqueRecordRanksFirst) {
  const std::size_t ks[] = {3, 3};
  const std::vector<std::size_t> rows = {0, 0, 0, 1, 1, 0, 2, 2};
  const BackgroundKnowledge bk(rows, ks);
  AttackerProfile profile(0, 2);
  profile.observe(0, 1);
  profile.observe(1, 0);
  Rng rng(4);
  const auto ranked = reident_match(profile, bk, 3, rng);
  ASSERT_EQ(ranked.size(), 3u);
  EXPECT_EQ(ranked[0], 2u);
}

TEST(ReidentMatch, TiesAreBrokenUniformly) {
  // Four records match the profile exactly; top-1 hits a given one 1/4 of
  // the time, top-2 half of the time.
  const std::size_t ks[] = {2, 2};
  const std::vector<std::size_t> rows = {1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 1};
  const BackgroundKnowledge bk(rows, ks);
  AttackerProfile profile(0, 2);
  profile.observe(0, 1);
  profile.observe(1, 1);
  constexpr int kTrials = 20000;
  for (std::size_t top_k : {1u, 2u}) {
    int hits = 0;
    for (int t = 0; t < kTrials; ++t) {
      Rng rng(derive_seed(6, {top_k, static_cast<std::uint64_t>(t)}));
      const auto ranked = reident_match(profile, bk, top_k, rng);
      ASSERT_EQ(ranked.size(), top_k);
      for (std::size_t r : ranked) ASSERT_LT(r, 4u);
      hits += std::count(ranked.begin(), ranked.end(), 0u);
    }
    const double p = top_k / 4.0;
    EXPECT_LT(std::abs(hits - kTrials * p),
              3 * std::sqrt(kTrials * p * (1 - p)));
  }
}

TEST(ReidentMatch, PartialKnowledgeIgnoresUnknownColumns) {
  const std::size_t ks[] = {2, 2};
  const std::vector<std::size_t> rows = {0, 1, 1, 0};
  const std::size_t known[] = {1};
  const BackgroundKnowledge bk(rows, ks, known);
  EXPECT_EQ(bk.mode(), KnowledgeMode::kPartial);
  AttackerProfile profile(0, 2);
  profile.observe(0, 1);
  Rng rng(5);
  EXPECT_THROW(reident_match(profile, bk, 1, rng), InvalidArgument);
  profile.observe(1, 1);
  EXPECT_EQ(reident_match(profile, bk, 1, rng), std::vector<std::size_t>{0});
}

TEST(ReidentMatch, RejectsAllUnknownProfile) {
  const std::size_t ks[] = {2};
  const std::vector<std::size_t> rows = {0, 1};
  const BackgroundKnowledge bk(rows, ks);
  Rng rng(1);
  EXPECT_THROW(reident_match(AttackerProfile(0, 1), bk, 1, rng),
               InvalidArgument);
}

TEST(RandomRanking, HitsAtBaselineRate) {
  constexpr int kTrials = 20000;
  int hits = 0;
  Rng rng(8);
  for (int t = 0; t < kTrials; ++t) {
    const auto ranked = random_ranking(50, 5, rng);
    hits += std::count(ranked.begin(), ranked.end(), 7u);
  }
  const double p = 0.1;
  EXPECT_LT(std::abs(hits - kTrials * p), 3 * std::sqrt(kTrials * p * (1 - p)));
}

}  // namespace
}  // namespace ldpsim
