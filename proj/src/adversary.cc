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

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>

#include "ldpsim/error.h"

namespace ldpsim {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void throw_mismatch(const ProtocolParams& params) {
  throw VariantMismatch("report variant does not match protocol " +
                        std::string(protocol_name(params.protocol)));
}

double binomial_pmf(std::size_t x, std::size_t trials, double prob) {
  if (prob <= 0.0) return x == 0 ? 1.0 : 0.0;
  if (prob >= 1.0) return x == trials ? 1.0 : 0.0;
  const double nd = static_cast<double>(trials);
  const double xd = static_cast<double>(x);
  const double log_choose =
      std::lgamma(nd + 1.0) - std::lgamma(xd + 1.0) - std::lgamma(nd - xd + 1.0);
  return std::exp(log_choose + xd * std::log(prob) +
                  (nd - xd) * std::log1p(-prob));
}

// Correct guess when the true bit survives and wins the tie among set bits,
// or when nothing is set and the uniform fallback hits.
double unary_acc(double p, double q, std::size_t k) {
  double acc = (1.0 - p) * std::pow(1.0 - q, static_cast<double>(k - 1)) /
               static_cast<double>(k);
  for (std::size_t i = 1; i <= k; ++i) {
    acc += p / static_cast<double>(i) * binomial_pmf(i - 1, k - 1, q);
  }
  return acc;
}

}  // namespace

std::optional<std::size_t> predict_value(const SanitizedReport& report,
                                         const ProtocolParams& params,
                                         Rng& rng) {
  const std::size_t k = params.k;
  return std::visit(
      Overloaded{
          [&](const ValueReport& r) -> std::optional<std::size_t> {
            if (params.protocol != Protocol::kGrr) throw_mismatch(params);
            return r.value;
          },
          [&](const HashedReport& r) -> std::optional<std::size_t> {
            if (params.protocol != Protocol::kOlh) throw_mismatch(params);
            std::vector<std::size_t> preimage;
            for (std::size_t v = 0; v < k; ++v) {
              if (olh_hash(r.seed, v, params.aux) == r.hash) {
                preimage.push_back(v);
              }
            }
            if (preimage.empty()) return std::nullopt;
            return preimage[rng.index(preimage.size())];
          },
          [&](const SubsetReport& r) -> std::optional<std::size_t> {
            if (params.protocol != Protocol::kSs) throw_mismatch(params);
            if (r.members.empty()) return std::nullopt;
            return r.members[rng.index(r.members.size())];
          },
          [&](const BitsReport& r) -> std::optional<std::size_t> {
            if (!is_unary(params.protocol)) throw_mismatch(params);
            std::vector<std::size_t> ones;
            for (std::size_t v = 0; v < r.bits.size(); ++v) {
              if (r.bits[v] != 0) ones.push_back(v);
            }
            if (ones.empty()) return rng.index(r.bits.size());
            return ones[rng.index(ones.size())];
          },
      },
      report);
}

double analytic_acc(Protocol protocol, double epsilon, std::size_t k,
                    AccuracyForm form) {
  const ProtocolParams params = protocol_params(protocol, epsilon, k);
  const double kd = static_cast<double>(k);
  const double e = std::exp(epsilon);
  switch (protocol) {
    case Protocol::kGrr:
      return 100.0 * params.p;
    case Protocol::kOlh:
      if (form == AccuracyForm::kPublished) {
        return 100.0 / (2.0 * std::max(kd / (e + 1.0), 1.0));
      } else {
        const double g = static_cast<double>(params.aux);
        return 100.0 * params.p * (g / kd) *
               -std::expm1(kd * std::log1p(-1.0 / g));
      }
    case Protocol::kSs:
      if (form == AccuracyForm::kPublished) {
        return 100.0 * (e + 1.0) / (2.0 * kd);
      }
      return 100.0 * params.p / static_cast<double>(params.aux);
    case Protocol::kSue:
    case Protocol::kOue:
      return 100.0 * unary_acc(params.p, params.q, k);
  }
  throw InvalidArgument("unknown protocol");
}

double empirical_acc(Protocol protocol, double epsilon, std::size_t k,
                     std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("need at least one user");
  const ProtocolParams params = protocol_params(protocol, epsilon, k);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, {i}));
    const std::size_t v = rng.index(k);
    const auto guess = predict_value(randomize(v, params, rng), params, rng);
    if (guess && *guess == v) ++correct;
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(n);
}

double multi_collection_acc(Protocol protocol, double epsilon,
                            std::span<const std::size_t> ks,
                            PrivacyMetric metric, AccuracyForm form) {
  if (ks.empty()) throw InvalidArgument("need at least one survey");
  const double d = static_cast<double>(ks.size());
  double acc = 1.0;
  for (std::size_t j = 0; j < ks.size(); ++j) {
    acc *= analytic_acc(protocol, epsilon, ks[j], form) / 100.0;
    if (metric == PrivacyMetric::kNonUniform) {
      acc *= (d - static_cast<double>(j)) / d;
    }
  }
  return 100.0 * acc;
}

void AttackerProfile::observe(std::size_t attribute,
                              std::optional<std::size_t> value) {
  if (attribute >= predicted_.size()) {
    throw InvalidArgument("attribute outside the profile");
  }
  if (value) predicted_[attribute] = value;
}

std::size_t AttackerProfile::known_count() const {
  return static_cast<std::size_t>(
      std::count_if(predicted_.begin(), predicted_.end(),
                    [](const auto& v) { return v.has_value(); }));
}

BackgroundKnowledge::BackgroundKnowledge(std::span<const std::size_t> rows,
                                         std::span<const std::size_t> ks,
                                         std::span<const std::size_t> columns)
    : ks_(ks.begin(), ks.end()) {
  const std::size_t d = ks_.size();
  if (d == 0) throw InvalidArgument("background needs at least one column");
  if (rows.size() % d != 0) {
    throw InvalidArgument("background rows are not a multiple of d");
  }
  n_ = rows.size() / d;
  if (columns.empty()) {
    for (std::size_t j = 0; j < d; ++j) columns_.push_back(j);
  } else {
    columns_.assign(columns.begin(), columns.end());
  }
  known_.assign(d, false);
  for (std::size_t j : columns_) {
    if (j >= d) throw InvalidArgument("background column out of range");
    known_[j] = true;
  }
  offsets_.resize(d);
  entries_.resize(d);
  for (std::size_t j : columns_) {
    auto& off = offsets_[j];
    off.assign(ks_[j] + 1, 0);
    for (std::size_t r = 0; r < n_; ++r) {
      const std::size_t v = rows[r * d + j];
      if (v >= ks_[j]) throw OutOfDomain("background value out of domain");
      ++off[v + 1];
    }
    for (std::size_t v = 0; v < ks_[j]; ++v) off[v + 1] += off[v];
    auto& ent = entries_[j];
    ent.resize(n_);
    std::vector<std::size_t> cursor(off.begin(), off.end() - 1);
    for (std::size_t r = 0; r < n_; ++r) ent[cursor[rows[r * d + j]]++] = r;
  }
}

std::span<const std::size_t> BackgroundKnowledge::postings(
    std::size_t attribute, std::size_t value) const {
  if (!known_[attribute] || value >= ks_[attribute]) return {};
  const auto& off = offsets_[attribute];
  return std::span<const std::size_t>(entries_[attribute])
      .subspan(off[value], off[value + 1] - off[value]);
}

std::vector<std::size_t> reident_match(const AttackerProfile& profile,
                                       const BackgroundKnowledge& background,
                                       std::size_t top_k, Rng& rng) {
  if (profile.predicted().size() != background.d()) {
    throw InvalidArgument("profile and background disagree on d");
  }
  std::vector<std::size_t> attrs;
  for (std::size_t j = 0; j < background.d(); ++j) {
    if (profile.predicted()[j] && background.known(j)) attrs.push_back(j);
  }
  if (attrs.empty()) {
    throw InvalidArgument("profile has no prediction the background covers");
  }
  const std::size_t n = background.size();
  top_k = std::min(top_k, n);

  // Minimizing Hamming distance over `attrs` is maximizing matches.
  std::vector<std::uint16_t> matches(n, 0);
  for (std::size_t j : attrs) {
    for (std::size_t r : background.postings(j, *profile.predicted()[j])) {
      ++matches[r];
    }
  }
  const std::size_t levels = attrs.size() + 1;
  std::vector<std::size_t> histogram(levels, 0);
  for (auto m : matches) ++histogram[m];

  // Lowest match level that still contributes to the top_k.
  std::size_t cutoff = levels - 1;
  for (std::size_t taken = 0;; --cutoff) {
    taken += histogram[cutoff];
    if (taken >= top_k || cutoff == 0) break;
  }

  std::vector<std::vector<std::size_t>> buckets(levels);
  for (std::size_t r = 0; r < n; ++r) {
    if (matches[r] >= cutoff) buckets[matches[r]].push_back(r);
  }
  std::vector<std::size_t> ranked;
  ranked.reserve(top_k);
  for (std::size_t level = levels; level-- > cutoff;) {
    auto& bucket = buckets[level];
    const std::size_t room = top_k - ranked.size();
    if (bucket.size() <= room) {
      shuffle(std::span<std::size_t>(bucket), rng);
      ranked.insert(ranked.end(), bucket.begin(), bucket.end());
    } else {
      for (std::size_t i : sample_without_replacement(bucket.size(), room, rng)) {
        ranked.push_back(bucket[i]);
      }
    }
    if (ranked.size() == top_k) break;
  }
  return ranked;
}

std::vector<std::size_t> random_ranking(std::size_t n, std::size_t top_k,
                                        Rng& rng) {
  return sample_without_replacement(n, std::min(top_k, n), rng);
}

}  // namespace ldpsim
