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

#include "ldpsim/privacy_budget.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ldpsim/error.h"

namespace ldpsim {

double alpha_from_epsilon(double epsilon, std::size_t n, std::size_t k) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  if (n < 2 || k < 2) throw InvalidArgument("alpha needs n >= 2 and k >= 2");
  const double log2e = std::numbers::log2e;
  return std::min({epsilon * log2e, epsilon * epsilon * log2e,
                   std::log2(static_cast<double>(n)),
                   std::log2(static_cast<double>(k))});
}

AlphaFromBayes alpha_from_bayes_error(double beta, std::size_t n) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw InvalidArgument("Bayes error must lie in (0, 1)");
  }
  if (n < 2) throw InvalidArgument("Bayes error mapping needs n >= 2");
  const double raw = (1.0 - beta) * std::log2(static_cast<double>(n)) - 1.0;
  if (raw < 0.0) return {0.0, true};
  return {raw, false};
}

EpsilonOrPassThrough epsilon_from_alpha(double alpha, std::size_t n,
                                        std::size_t k) {
  if (!(alpha >= 0.0)) throw InvalidArgument("alpha must be non-negative");
  using Kind = EpsilonOrPassThrough::Kind;
  if (std::log2(static_cast<double>(k)) <= alpha ||
      std::log2(static_cast<double>(n)) <= alpha) {
    return {Kind::kPassThrough, 0.0};
  }
  if (alpha == 0.0) return {Kind::kZeroBudget, 0.0};
  const double linear = alpha / std::numbers::log2e;
  const double eps = linear >= 1.0 ? linear : std::sqrt(linear);
  return {Kind::kEpsilon, eps};
}

}  // namespace ldpsim
