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

#ifndef LDPSIM_SYNTHETIC_H_
#define LDPSIM_SYNTHETIC_H_

#include <cstddef>
#include <span>
#include <vector>

#include "ldpsim/data.h"
#include "ldpsim/rng.h"

namespace ldpsim {

// Domain sizes of the ten Adult attributes used throughout: age, workclass,
// education, marital-status, occupation, relationship, race, sex,
// native-country, salary.
inline constexpr std::size_t kAdultKs[] = {74, 7, 16, 7, 14, 6, 5, 2, 41, 2};

// Marginal distributions shaped like the Adult census extract (peaked age,
// one dominant workclass, race and country, a 2:1 sex split, 3:1 salary).
std::vector<std::vector<double>> adult_like_marginals();

// Independent draws from adult_like_marginals(). Row i < k_j takes value i in
// attribute j, so every value occurs once n >= 74.
Dataset adult_like_dataset(std::size_t n, Rng& rng);

// p(v) proportional to (v + 1)^-exponent.
std::vector<double> zipf_marginal(std::size_t k, double exponent);

Dataset zipf_dataset(std::span<const std::size_t> ks, double exponent,
                     std::size_t n, Rng& rng);
Dataset uniform_dataset(std::span<const std::size_t> ks, std::size_t n,
                        Rng& rng);

// Independent draws from the given marginals (one per attribute).
Dataset dataset_from_marginals(const MultiDomain& domain,
                               const std::vector<std::vector<double>>& marginals,
                               std::size_t n, Rng& rng);

}  // namespace ldpsim

#endif  // LDPSIM_SYNTHETIC_H_
