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


#include "ldpsim/stats.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace ldpsim {
namespace {

TEST(Moments, Basics) {
  const std::vector<double> xs = {2, 4, 4, 4, 5, 5, 7, 9};
  EXPECT_DOUBLE_EQ(mean(xs), 5.0);
  EXPECT_NEAR(sample_variance(xs), 32.0 / 7.0, 1e-12);
  EXPECT_NEAR(standard_error(xs), std::sqrt(32.0 / 7.0 / 8.0), 1e-12);
}

TEST(Spearman, ReferenceValues) {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  EXPECT_NEAR(spearman(x, std::vector<double>{2, 1, 4, 3, 5}), 0.8, 1e-12);
  EXPECT_NEAR(spearman(x, std::vector<double>{5, 4, 3, 2, 1}), -1.0, 1e-12);
  // Ties receive average ranks.
  EXPECT_NEAR(spearman(std::vector<double>{1, 2, 2, 3},
                       std::vector<double>{1, 2, 2, 3}),
              1.0, 1e-12);
}

TEST(ChiSquare, GoodnessOfFitReference) {
  const std::vector<std::uint64_t> observed = {18, 22, 20, 40};
  const auto r = chi_square_gof(observed, std::vector<double>(4, 0.25));
  EXPECT_NEAR(r.statistic, 12.32, 1e-12);
  EXPECT_EQ(r.dof, 3u);
  EXPECT_NEAR(r.p_value, 0.006363629995195269, 1e-9);
}

TEST(ChiSquare, TwoSampleReference) {
  const std::vector<std::uint64_t> a = {10, 20, 30};
  const std::vector<std::uint64_t> b = {15, 15, 30};
  const auto r = chi_square_two_sample(a, b);
  EXPECT_NEAR(r.statistic, 1.7142857142857144, 1e-12);
  EXPECT_EQ(r.dof, 2u);
  EXPECT_NEAR(r.p_value, 0.42437284567695, 1e-9);
}

TEST(Kolmogorov, StatisticAndCritical) {
  const std::vector<double> xs = {0.1, 0.4, 0.7};
  EXPECT_NEAR(ks_statistic(xs, [](double x) { return x; }), 0.3,
              1e-12);
  EXPECT_NEAR(ks_critical(100, 0.05), 0.1358, 1e-4);
}

}  // namespace
}  // namespace ldpsim
