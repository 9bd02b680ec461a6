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

#ifndef LDPSIM_PRIVACY_BUDGET_H_
#define LDPSIM_PRIVACY_BUDGET_H_

#include <cstddef>

namespace ldpsim {

// Mapping between epsilon-LDP and (U, alpha)-PIE privacy. alpha is in bits,
// epsilon in nats.

// alpha = min(eps log2 e, eps^2 log2 e, log2 n, log2 k).
double alpha_from_epsilon(double epsilon, std::size_t n, std::size_t k);

struct AlphaFromBayes {
  double alpha = 0.0;
  // True when (1 - beta) log2 n - 1 < 0 and alpha was clamped to zero.
  bool clamped = false;
};

// Largest alpha whose Bayes-error lower bound 1 - (alpha + 1)/log2 n still
// reaches beta, clamped at zero.
AlphaFromBayes alpha_from_bayes_error(double beta, std::size_t n);

struct EpsilonOrPassThrough {
  enum class Kind {
    kEpsilon,
    // The attribute leaks at most alpha bits even unrandomized; report the
    // raw value.
    kPassThrough,
    // alpha == 0 without pass-through: no positive epsilon satisfies the
    // budget. epsilon is 0 and estimation on this path is not identifiable.
    kZeroBudget,
  };
  Kind kind = Kind::kEpsilon;
  double epsilon = 0.0;

  bool pass_through() const { return kind == Kind::kPassThrough; }
};

// Inverts the epsilon terms of alpha_from_epsilon. The branch switches at
// epsilon = 1 where eps and eps^2 cross, so the inverse is continuous.
EpsilonOrPassThrough epsilon_from_alpha(double alpha, std::size_t n,
                                        std::size_t k);

}  // namespace ldpsim

#endif  // LDPSIM_PRIVACY_BUDGET_H_
