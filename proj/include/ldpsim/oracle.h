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

#ifndef LDPSIM_ORACLE_H_
#define LDPSIM_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "ldpsim/rng.h"

namespace ldpsim {

// Single-attribute frequency oracles.
enum class Protocol { kGrr, kOlh, kSs, kSue, kOue };

inline constexpr Protocol kAllProtocols[] = {Protocol::kGrr, Protocol::kOlh,
                                             Protocol::kSs, Protocol::kSue,
                                             Protocol::kOue};

std::string_view protocol_name(Protocol protocol);
// Accepts "grr", "olh", "ss", "sue", "oue" (case-insensitive).
Protocol parse_protocol(std::string_view name);

constexpr bool is_unary(Protocol protocol) {
  return protocol == Protocol::kSue || protocol == Protocol::kOue;
}

// Upper bound on the OLH hash range. Only reached for epsilon > ~22.
inline constexpr std::uint64_t kMaxOlhRange = std::uint64_t{1} << 32;

// Randomization and estimation parameters of one protocol at (epsilon, k).
//
// `p` and `q` are the estimation-side pair: the probability that a report
// supports the user's own value and any one other value, respectively.
// For every protocol except OLH these are also the perturbation
// probabilities. OLH perturbs over the hashed alphabet [0, g) with
// (p, q_perturb) and estimates with q = 1/g.
struct ProtocolParams {
  Protocol protocol = Protocol::kGrr;
  double epsilon = 0.0;
  std::size_t k = 0;
  double p = 0.0;
  double q = 0.0;
  double q_perturb = 0.0;
  // OLH: hash range g. SS: subset size omega. Zero otherwise.
  std::uint64_t aux = 0;
};

// Throws InvalidArgument for epsilon <= 0 and DegenerateDomain for k < 2.
//
// Integerization: OLH uses g = max(2, round(e^eps + 1)) capped at
// kMaxOlhRange; SS uses omega = round(k / (e^eps + 1)) clamped to [1, k-1].
ProtocolParams protocol_params(Protocol protocol, double epsilon,
                               std::size_t k);

struct ValueReport {
  std::size_t value = 0;
  bool operator==(const ValueReport&) const = default;
};

struct HashedReport {
  std::uint64_t seed = 0;
  std::uint64_t hash = 0;
  bool operator==(const HashedReport&) const = default;
};

// Sorted, distinct member indices.
struct SubsetReport {
  std::vector<std::size_t> members;
  bool operator==(const SubsetReport&) const = default;
};

// One byte per bit, values 0/1, length k.
struct BitsReport {
  std::vector<std::uint8_t> bits;
  bool operator==(const BitsReport&) const = default;
};

// GRR -> ValueReport, OLH -> HashedReport, SS -> SubsetReport,
// SUE/OUE -> BitsReport.
using SanitizedReport =
    std::variant<ValueReport, HashedReport, SubsetReport, BitsReport>;

// hash(seed, v) = SplitMix64(seed XOR SplitMix64(v)) mod g.
std::uint64_t olh_hash(std::uint64_t seed, std::size_t value, std::uint64_t g);

SanitizedReport randomize(std::size_t value, const ProtocolParams& params,
                          Rng& rng);

// Unary-encoding perturbation of a one-hot vector (`hot`) or of the all-zero
// vector (`hot` empty): bit i is 1 with probability p if i == hot, else q.
BitsReport randomize_unary(std::optional<std::size_t> hot, double p, double q,
                           std::size_t k, Rng& rng);

bool supports(const SanitizedReport& report, std::size_t candidate,
              const ProtocolParams& params);

// Adds, for every candidate value, 1 if `report` supports it.
void accumulate_support(const SanitizedReport& report,
                        const ProtocolParams& params,
                        std::span<std::uint64_t> counts);

std::vector<std::uint64_t> support_counts(
    std::span<const SanitizedReport> reports, const ProtocolParams& params);

// f(i) = (C(i) - n q) / (n (p - q)). Raw: no clipping, no normalization.
std::vector<double> estimate_from_counts(std::span<const std::uint64_t> counts,
                                         std::size_t n, double p, double q);

// Throws InvalidArgument for an empty report set and NonIdentifiable when
// p == q.
std::vector<double> estimate_frequencies(
    std::span<const SanitizedReport> reports, const ProtocolParams& params);

// Optional post-processing: clip negatives to zero and renormalize. Throws
// InvalidArgument if nothing positive remains.
std::vector<double> clip_normalize(std::span<const double> estimates);

}  // namespace ldpsim

#endif  // LDPSIM_ORACLE_H_
