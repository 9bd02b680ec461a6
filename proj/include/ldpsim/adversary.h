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

#ifndef LDPSIM_ADVERSARY_H_
#define LDPSIM_ADVERSARY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ldpsim/oracle.h"
#include "ldpsim/rng.h"

namespace ldpsim {

// Best single guess of the true value behind one report.
//   GRR  the reported value,
//   OLH  uniform over the hash preimage {v : hash(seed, v) = h},
//   SS   uniform over the subset,
//   UE   the single set bit, else uniform over set bits, else uniform over
//        the domain.
// Returns nullopt when the OLH preimage is empty: no value is consistent
// with the report and the guess counts as wrong.
std::optional<std::size_t> predict_value(const SanitizedReport& report,
                                         const ProtocolParams& params,
                                         Rng& rng);

enum class AccuracyForm {
  // Closed forms as published. OLH and SS assume g = e^eps + 1 and
  // omega = k / (e^eps + 1) are real-valued.
  kPublished,
  // Expected accuracy of predict_value at the integer g and omega that
  // protocol_params actually uses. Identical to kPublished for GRR, SUE and
  // OUE.
  kExact,
};

// Expected attacker accuracy in percent for one report.
double analytic_acc(Protocol protocol, double epsilon, std::size_t k,
                    AccuracyForm form = AccuracyForm::kPublished);

// Monte-Carlo counterpart of analytic_acc: n users with uniform true
// values, one report each, percentage of correct predict_value guesses.
double empirical_acc(Protocol protocol, double epsilon, std::size_t k,
                     std::size_t n, std::uint64_t seed);

enum class PrivacyMetric {
  // Every user reports a different attribute in each survey.
  kUniform,
  // Attributes sampled with replacement; only users who happened to report
  // all d distinct attributes yield a complete profile.
  kNonUniform,
};

// Expected percentage of users whose complete d-attribute profile is
// guessed right after d surveys, one per entry of `ks`.
double multi_collection_acc(Protocol protocol, double epsilon,
                            std::span<const std::size_t> ks,
                            PrivacyMetric metric,
                            AccuracyForm form = AccuracyForm::kPublished);

// What the attacker has learned about one user across surveys: at most one
// predicted value per attribute. A later known prediction overwrites an
// earlier one; an unknown prediction never erases a known one.
class AttackerProfile {
 public:
  AttackerProfile() = default;
  AttackerProfile(std::size_t user_id, std::size_t d)
      : user_id_(user_id), predicted_(d) {}

  void observe(std::size_t attribute, std::optional<std::size_t> value);

  std::size_t user_id() const { return user_id_; }
  const std::vector<std::optional<std::size_t>>& predicted() const {
    return predicted_;
  }
  std::size_t known_count() const;

 private:
  std::size_t user_id_ = 0;
  std::vector<std::optional<std::size_t>> predicted_;
};

enum class KnowledgeMode { kFull, kPartial };

// Public records the attacker links profiles against. Identities are row
// indices of the table. Keeps an inverted index (attribute, value) -> rows
// over the known columns.
class BackgroundKnowledge {
 public:
  // `rows` is row-major n x d. `columns` lists the attributes the attacker
  // knows; empty means all of them.
  BackgroundKnowledge(std::span<const std::size_t> rows,
                      std::span<const std::size_t> ks,
                      std::span<const std::size_t> columns = {});

  std::size_t size() const { return n_; }
  std::size_t d() const { return ks_.size(); }
  const std::vector<std::size_t>& columns() const { return columns_; }
  bool known(std::size_t attribute) const { return known_[attribute]; }
  KnowledgeMode mode() const {
    return columns_.size() == ks_.size() ? KnowledgeMode::kFull
                                         : KnowledgeMode::kPartial;
  }
  std::span<const std::size_t> postings(std::size_t attribute,
                                        std::size_t value) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> ks_;
  std::vector<std::size_t> columns_;
  std::vector<bool> known_;
  // offsets_[attribute][value] .. offsets_[attribute][value + 1] into
  // entries_[attribute].
  std::vector<std::vector<std::size_t>> offsets_;
  std::vector<std::vector<std::size_t>> entries_;
};

// Ranks records by Hamming distance to the profile over the predicted
// attributes the background covers and returns the `top_k` closest
// identities, best first. Equal distances are ordered by a uniform shuffle
// drawn from `rng`, so any prefix of the result is itself a valid top-k'
// answer. Throws InvalidArgument when no usable prediction remains.
std::vector<std::size_t> reident_match(const AttackerProfile& profile,
                                       const BackgroundKnowledge& background,
                                       std::size_t top_k, Rng& rng);

// Attacker that ignores the profile: `top_k` distinct identities uniformly.
std::vector<std::size_t> random_ranking(std::size_t n, std::size_t top_k,
                                        Rng& rng);

}  // namespace ldpsim

#endif  // LDPSIM_ADVERSARY_H_
