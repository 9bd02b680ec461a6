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

#ifndef LDPSIM_MULTIDIM_H_
#define LDPSIM_MULTIDIM_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "ldpsim/domain.h"
#include "ldpsim/oracle.h"
#include "ldpsim/rng.h"

namespace ldpsim {

enum class UeFlavor { kSue, kOue };

// Fake data for non-sampled attributes under random sampling plus fake data:
//   kGrr  uniform value,
//   kUeZ  unary perturbation of the all-zero vector,
//   kUeR  unary perturbation of a uniform one-hot vector.
enum class RsfdVariant { kGrr, kUeZ, kUeR };

// Realistic fake data: values (GRR) or one-hot vectors (UE-r) drawn from a
// per-attribute prior. There is no zero-vector variant.
enum class RsrfdVariant { kGrr, kUeR };

enum class Solution {
  kSpl,
  kSmp,
  kRsfdGrr,
  kRsfdUeZ,
  kRsfdUeR,
  kRsrfdGrr,
  kRsrfdUeR,
};

enum class SamplingMode { kWithoutReplacement, kWithReplacement };

// A solution plus the knobs that pick its base randomizer. `protocol` is used
// by SPL and SMP, `flavor` by the UE variants.
struct CollectionScheme {
  Solution solution = Solution::kSmp;
  Protocol protocol = Protocol::kGrr;
  UeFlavor flavor = UeFlavor::kOue;

  // "spl", "smp", "rsfd_grr", "rsfd_sue_z", "rsfd_oue_r", "rsrfd_grr",
  // "rsrfd_sue_r", ... For spl/smp the protocol is supplied separately.
  static CollectionScheme parse(std::string_view name,
                                Protocol protocol = Protocol::kGrr);
  std::string name() const;
  // Name of the base randomizer ("grr", "sue", "oue", ...).
  std::string protocol_label() const;

  bool random_sampling() const {
    return solution != Solution::kSpl && solution != Solution::kSmp;
  }
  bool uses_priors() const {
    return solution == Solution::kRsrfdGrr || solution == Solution::kRsrfdUeR;
  }
  bool unary() const;

  bool operator==(const CollectionScheme&) const = default;
};

// Output of one user in one collection. SMP exposes the sampled attribute
// and carries a single report; every other solution carries d reports and
// never exposes which slot holds the real value.
struct SurveyTuple {
  Solution solution = Solution::kSmp;
  std::optional<UeFlavor> flavor;
  std::optional<std::size_t> sampled_attribute;
  std::vector<SanitizedReport> reports;
};

// Simulation-side pairing of a tuple with the attribute the user actually
// sampled (ground truth for attribute-inference scoring).
struct LabeledTuple {
  SurveyTuple tuple;
  std::size_t sampled = 0;
};

// One probability vector per attribute.
using PriorSet = std::vector<std::vector<double>>;

// Throws InvalidArgument unless every vector has length k_j, is
// non-negative and sums to 1 within 1e-9.
void validate_priors(const PriorSet& priors, const MultiDomain& domain);
PriorSet uniform_priors(const MultiDomain& domain);

// eps' = ln(d (e^eps - 1) + 1).
double amplified_epsilon(double epsilon, std::size_t d);

SurveyTuple spl_sanitize(std::span<const std::size_t> values,
                         const MultiDomain& domain, Protocol protocol,
                         double epsilon, Rng& rng);

// Per-user state carried across SMP collections: which attributes the user
// already sampled and the memoized report for each (attribute, protocol,
// epsilon). Changing epsilon or protocol misses the memo.
class SmpUserState {
 public:
  const SanitizedReport* memo(std::size_t attribute, Protocol protocol,
                              double epsilon) const;
  void remember(std::size_t attribute, Protocol protocol, double epsilon,
                SanitizedReport report);

  bool used(std::size_t attribute) const;
  void mark_used(std::size_t attribute);
  std::size_t used_count() const { return used_count_; }

 private:
  using Key = std::tuple<std::size_t, int, std::uint64_t>;
  std::map<Key, SanitizedReport> memo_;
  std::vector<bool> used_;
  std::size_t used_count_ = 0;
};

// Picks the attribute an SMP user reports in this collection. `candidates`
// lists the attribute indices offered (all of [0, d) when empty). Without
// replacement, only unused candidates are eligible and SamplingExhausted is
// thrown when none remain.
std::size_t smp_choose_attribute(SmpUserState& state, SamplingMode mode,
                                 std::span<const std::size_t> candidates,
                                 std::size_t d, Rng& rng);

SurveyTuple smp_sanitize(std::span<const std::size_t> values,
                         const MultiDomain& domain, Protocol protocol,
                         double epsilon, Rng& rng, SamplingMode mode,
                         SmpUserState& state,
                         std::span<const std::size_t> candidates = {});

// Random sampling plus (uniform or prior-driven) fake data. Parameters and
// fake-data samplers are built once; sanitize() is then cheap per user.
class RandomSamplingSanitizer {
 public:
  static RandomSamplingSanitizer rsfd(const MultiDomain& domain,
                                      RsfdVariant variant, UeFlavor flavor,
                                      double epsilon);
  static RandomSamplingSanitizer rsrfd(const MultiDomain& domain,
                                       const PriorSet& priors,
                                       RsrfdVariant variant, UeFlavor flavor,
                                       double epsilon);
  // Dispatches on scheme.solution; `priors` is required for RS+RFD only.
  static RandomSamplingSanitizer for_scheme(const CollectionScheme& scheme,
                                            const MultiDomain& domain,
                                            double epsilon,
                                            const PriorSet* priors = nullptr);

  // Samples j uniformly from [0, d), then sanitize_at().
  LabeledTuple sanitize(std::span<const std::size_t> values, Rng& rng) const;
  LabeledTuple sanitize_at(std::span<const std::size_t> values,
                           std::size_t sampled, Rng& rng) const;

  // Unbiased per-attribute estimates. Throws InvalidArgument on an empty
  // tuple set or tuples of another solution.
  std::vector<std::vector<double>> estimate(
      std::span<const SurveyTuple> tuples) const;
  std::vector<std::vector<double>> estimate_from_counts(
      const std::vector<std::vector<std::uint64_t>>& counts,
      std::size_t n) const;
  // Adds the support counts of one tuple.
  void accumulate(const SurveyTuple& tuple,
                  std::vector<std::vector<std::uint64_t>>& counts) const;
  std::vector<std::vector<std::uint64_t>> zero_counts() const;

  const MultiDomain& domain() const { return domain_; }
  Solution solution() const { return solution_; }
  UeFlavor flavor() const { return flavor_; }
  double epsilon() const { return epsilon_; }
  double amplified() const { return amplified_; }
  // Randomizer parameters (at the amplified epsilon) of attribute j's slot.
  const ProtocolParams& slot_params(std::size_t attribute) const {
    return slot_params_[attribute];
  }
  const PriorSet& fake_distribution() const { return fake_probs_; }

 private:
  enum class Fake { kValue, kZeroVector, kOneHot };

  RandomSamplingSanitizer(const MultiDomain& domain, Solution solution,
                          UeFlavor flavor, double epsilon, Fake fake,
                          PriorSet fake_probs);

  MultiDomain domain_;
  Solution solution_;
  UeFlavor flavor_;
  double epsilon_;
  double amplified_;
  Fake fake_;
  PriorSet fake_probs_;
  std::vector<CategoricalSampler> fake_samplers_;
  std::vector<ProtocolParams> slot_params_;
};

SurveyTuple rsfd_sanitize(std::span<const std::size_t> values,
                          const MultiDomain& domain, RsfdVariant variant,
                          UeFlavor flavor, double epsilon, Rng& rng);

std::vector<std::vector<double>> rsfd_estimate(
    std::span<const SurveyTuple> tuples, const MultiDomain& domain,
    RsfdVariant variant, UeFlavor flavor, double epsilon);

SurveyTuple rsrfd_sanitize(std::span<const std::size_t> values,
                           const MultiDomain& domain, const PriorSet& priors,
                           RsrfdVariant variant, UeFlavor flavor,
                           double epsilon, Rng& rng);

std::vector<std::vector<double>> rsrfd_estimate(
    std::span<const SurveyTuple> tuples, const MultiDomain& domain,
    const PriorSet& priors, RsrfdVariant variant, UeFlavor flavor,
    double epsilon);

// Variance of one RS+RFD estimate: d^2 g (1 - g) / (n (p - q)^2) where g is
// the probability that a single user's report supports the value. Throws
// ParameterInconsistency if g leaves [0, 1].
double rsrfd_variance(RsrfdVariant variant, double frequency, double prior,
                      double p, double q, std::size_t d, std::size_t n);

}  // namespace ldpsim

#endif  // LDPSIM_MULTIDIM_H_
