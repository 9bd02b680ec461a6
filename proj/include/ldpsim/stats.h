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

#ifndef LDPSIM_STATS_H_
#define LDPSIM_STATS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace ldpsim {

double mean(std::span<const double> xs);
// Unbiased sample variance; zero for fewer than two samples.
double sample_variance(std::span<const double> xs);
double standard_error(std::span<const double> xs);

// Spearman rank correlation with average ranks for ties. Zero when either
// side is constant.
double spearman(std::span<const double> x, std::span<const double> y);

struct ChiSquare {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};

// Goodness of fit of observed counts to expected probabilities. Cells with
// zero expectation must have zero counts and are dropped.
ChiSquare chi_square_gof(std::span<const std::uint64_t> observed,
                         std::span<const double> probabilities);

// Homogeneity of two count vectors over the same categories.
ChiSquare chi_square_two_sample(std::span<const std::uint64_t> a,
                                std::span<const std::uint64_t> b);

// Largest gap between the empirical CDF of `samples` and `cdf`.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

// Asymptotic one-sample critical value sqrt(-ln(alpha/2) / 2) / sqrt(n).
double ks_critical(std::size_t n, double alpha);

}  // namespace ldpsim

#endif  // LDPSIM_STATS_H_
