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

#include "ldpsim/synthetic.h"

#include <cmath>
#include <string>

#include "ldpsim/error.h"

namespace ldpsim {
namespace {

constexpr const char* kAdultNames[] = {
    "age",        "workclass", "education", "marital-status",
    "occupation", "relationship", "race",   "sex",
    "native-country", "salary"};

std::vector<double> normalized(std::vector<double> w) {
  double total = 0.0;
  for (double x : w) total += x;
  for (double& x : w) x /= total;
  return w;
}

MultiDomain sized_domain(std::span<const std::size_t> ks) {
  std::vector<AttributeDomain> attrs;
  for (std::size_t j = 0; j < ks.size(); ++j) {
    attrs.push_back(AttributeDomain::with_size("a" + std::to_string(j), ks[j]));
  }
  return MultiDomain(std::move(attrs));
}

}  // namespace

std::vector<double> zipf_marginal(std::size_t k, double exponent) {
  if (k == 0) throw InvalidArgument("zipf marginal needs k >= 1");
  std::vector<double> w(k);
  for (std::size_t v = 0; v < k; ++v) {
    w[v] = std::pow(static_cast<double>(v + 1), -exponent);
  }
  return normalized(std::move(w));
}

std::vector<std::vector<double>> adult_like_marginals() {
  std::vector<std::vector<double>> m;
  // Ages 17..90, mode in the late thirties, long right tail.
  std::vector<double> age(74);
  for (std::size_t v = 0; v < age.size(); ++v) {
    const double z = (static_cast<double>(v) - 20.0) / 14.0;
    age[v] = std::exp(-0.5 * z * z) + 0.02;
  }
  m.push_back(normalized(std::move(age)));
  m.push_back(zipf_marginal(7, 2.2));    // workclass
  m.push_back(zipf_marginal(16, 1.1));   // education
  m.push_back(zipf_marginal(7, 1.4));    // marital-status
  m.push_back(zipf_marginal(14, 0.6));   // occupation
  m.push_back(zipf_marginal(6, 1.2));    // relationship
  m.push_back(zipf_marginal(5, 2.6));    // race
  m.push_back({0.675, 0.325});           // sex
  m.push_back(zipf_marginal(41, 2.8));   // native-country
  m.push_back({0.752, 0.248});           // salary
  return m;
}

Dataset dataset_from_marginals(const MultiDomain& domain,
                               const std::vector<std::vector<double>>& marginals,
                               std::size_t n, Rng& rng) {
  FrequencyTable table;
  table.freqs = marginals;
  table.n = n;
  return synthesize_profiles(domain, table, n, rng);
}

Dataset adult_like_dataset(std::size_t n, Rng& rng) {
  std::vector<AttributeDomain> attrs;
  for (std::size_t j = 0; j < std::size(kAdultKs); ++j) {
    std::vector<std::string> labels;
    for (std::size_t v = 0; v < kAdultKs[j]; ++v) {
      labels.push_back(j == 0 ? std::to_string(17 + v)
                              : std::string(kAdultNames[j]) + "_" +
                                    std::to_string(v));
    }
    attrs.emplace_back(kAdultNames[j], std::move(labels));
  }
  MultiDomain domain(std::move(attrs));
  const auto marginals = adult_like_marginals();
  std::vector<CategoricalSampler> samplers;
  for (const auto& f : marginals) samplers.emplace_back(f);
  std::vector<std::size_t> cells;
  cells.reserve(n * domain.d());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < domain.d(); ++j) {
      cells.push_back(i < domain.k(j) ? i : samplers[j](rng));
    }
  }
  return Dataset(std::move(domain), std::move(cells));
}

Dataset zipf_dataset(std::span<const std::size_t> ks, double exponent,
                     std::size_t n, Rng& rng) {
  std::vector<std::vector<double>> marginals;
  for (std::size_t k : ks) marginals.push_back(zipf_marginal(k, exponent));
  return dataset_from_marginals(sized_domain(ks), marginals, n, rng);
}

Dataset uniform_dataset(std::span<const std::size_t> ks, std::size_t n,
                        Rng& rng) {
  return zipf_dataset(ks, 0.0, n, rng);
}

}  // namespace ldpsim
