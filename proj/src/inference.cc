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

#include "ldpsim/inference.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <variant>

#include "ldpsim/error.h"
#include "ldpsim/oracle.h"

namespace ldpsim {
namespace {

// Stream tags for derive_seed.
constexpr std::uint64_t kUserStream = 0x7573;
constexpr std::uint64_t kSplitStream = 0x73706c;
constexpr std::uint64_t kSyntheticStream = 0x73796e;

}  // namespace

std::string_view attack_model_name(AttackModel model) {
  switch (model) {
    case AttackModel::kNk:
      return "nk";
    case AttackModel::kPk:
      return "pk";
    case AttackModel::kHm:
      return "hm";
  }
  return "?";
}

AttackModel parse_attack_model(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "nk") return AttackModel::kNk;
  if (lower == "pk") return AttackModel::kPk;
  if (lower == "hm" || lower == "hybrid") return AttackModel::kHm;
  throw InvalidArgument("unknown attack model '" + std::string(name) + "'");
}

FeatureLayout feature_layout(const RandomSamplingSanitizer& sanitizer) {
  FeatureLayout layout;
  const auto& domain = sanitizer.domain();
  const bool unary = sanitizer.solution() != Solution::kRsfdGrr &&
                     sanitizer.solution() != Solution::kRsrfdGrr;
  for (std::size_t j = 0; j < domain.d(); ++j) {
    if (unary) {
      layout.cardinalities.insert(layout.cardinalities.end(), domain.k(j), 2);
    } else {
      layout.cardinalities.push_back(domain.k(j));
    }
  }
  return layout;
}

void encode_features(const SurveyTuple& tuple,
                     std::vector<std::uint32_t>& out) {
  for (const auto& report : tuple.reports) {
    if (const auto* v = std::get_if<ValueReport>(&report)) {
      out.push_back(static_cast<std::uint32_t>(v->value));
    } else if (const auto* b = std::get_if<BitsReport>(&report)) {
      out.insert(out.end(), b->bits.begin(), b->bits.end());
    } else {
      throw VariantMismatch("only value and bit reports can be encoded");
    }
  }
}

LearningSet::LearningSet(FeatureLayout layout, std::size_t classes,
                         Provenance provenance)
    : layout_(std::move(layout)), classes_(classes), provenance_(provenance) {
  if (classes_ == 0) throw InvalidArgument("learning set needs classes");
}

void LearningSet::add(std::span<const std::uint32_t> features,
                      std::size_t label) {
  if (features.size() != layout_.width()) {
    throw InvalidArgument("feature row has the wrong width");
  }
  if (label >= classes_) throw InvalidArgument("label out of range");
  for (std::size_t f = 0; f < features.size(); ++f) {
    if (features[f] >= layout_.cardinalities[f]) {
      throw OutOfDomain("feature value out of range");
    }
  }
  features_.insert(features_.end(), features.begin(), features.end());
  labels_.push_back(label);
}

void LearningSet::append(const LearningSet& other) {
  if (other.layout_ != layout_ || other.classes_ != classes_) {
    throw InvalidArgument("learning sets have different layouts");
  }
  features_.insert(features_.end(), other.features_.begin(),
                   other.features_.end());
  labels_.insert(labels_.end(), other.labels_.begin(), other.labels_.end());
  if (other.provenance_ != provenance_) provenance_ = Provenance::kMixed;
}

void NaiveBayes::train(const LearningSet& data) {
  if (data.size() == 0) throw InvalidArgument("empty learning set");
  layout_ = data.layout();
  classes_ = data.classes();
  offsets_.assign(layout_.width() + 1, 0);
  for (std::size_t f = 0; f < layout_.width(); ++f) {
    offsets_[f + 1] = offsets_[f] + layout_.cardinalities[f];
  }
  total_ = offsets_.back();

  std::vector<double> class_count(classes_, 0.0);
  std::vector<double> counts(classes_ * total_, 0.0);
  for (std::size_t r = 0; r < data.size(); ++r) {
    const std::size_t c = data.label(r);
    class_count[c] += 1.0;
    const auto x = data.features(r);
    double* row = counts.data() + c * total_;
    for (std::size_t f = 0; f < x.size(); ++f) row[offsets_[f] + x[f]] += 1.0;
  }

  const auto seen = std::count_if(class_count.begin(), class_count.end(),
                                  [](double c) { return c > 0.0; });
  constant_ = seen == 1;
  if (constant_) {
    constant_class_ = static_cast<std::size_t>(
        std::find_if(class_count.begin(), class_count.end(),
                     [](double c) { return c > 0.0; }) -
        class_count.begin());
  }

  const double n = static_cast<double>(data.size());
  log_prior_.resize(classes_);
  log_likelihood_.assign(classes_ * total_, 0.0);
  for (std::size_t c = 0; c < classes_; ++c) {
    log_prior_[c] = std::log((class_count[c] + 1.0) /
                             (n + static_cast<double>(classes_)));
    for (std::size_t f = 0; f < layout_.width(); ++f) {
      const double denom =
          class_count[c] + static_cast<double>(layout_.cardinalities[f]);
      for (std::size_t v = 0; v < layout_.cardinalities[f]; ++v) {
        const std::size_t at = c * total_ + offsets_[f] + v;
        log_likelihood_[at] = std::log((counts[at] + 1.0) / denom);
      }
    }
  }
}

std::size_t NaiveBayes::predict(std::span<const std::uint32_t> features) const {
  if (classes_ == 0) throw InvalidArgument("classifier is not trained");
  if (features.size() != layout_.width()) {
    throw InvalidArgument("feature row has the wrong width");
  }
  if (constant_) return constant_class_;
  std::size_t best = 0;
  double best_score = -INFINITY;
  for (std::size_t c = 0; c < classes_; ++c) {
    const double* ll = log_likelihood_.data() + c * total_;
    double score = log_prior_[c];
    for (std::size_t f = 0; f < features.size(); ++f) {
      const std::uint32_t v = features[f];
      if (v >= layout_.cardinalities[f]) throw OutOfDomain("feature value");
      score += ll[offsets_[f] + v];
    }
    if (score > best_score) {
      best_score = score;
      best = c;
    }
  }
  return best;
}

std::unique_ptr<Classifier> make_classifier(std::string_view name) {
  if (name == "naive_bayes" || name == "nb") {
    return std::make_unique<NaiveBayes>();
  }
  throw InvalidArgument("unknown classifier '" + std::string(name) + "'");
}

LearningSet synthetic_learning_set(const RandomSamplingSanitizer& sanitizer,
                                   const Histograms& estimated_raw,
                                   std::size_t s, Rng& rng) {
  FrequencyTable raw;
  raw.flavor = FrequencyFlavor::kEstimatedRaw;
  raw.freqs = estimated_raw;
  FrequencyTable table;
  try {
    table = clipped(raw);
  } catch (const InvalidArgument&) {
    throw InvalidArgument(
        "estimated frequencies of some attribute are all non-positive");
  }
  const auto& domain = sanitizer.domain();
  LearningSet set(feature_layout(sanitizer), domain.d(),
                  Provenance::kSynthetic);
  const Dataset profiles = synthesize_profiles(domain, table, s, rng);
  std::vector<std::uint32_t> x;
  for (std::size_t i = 0; i < s; ++i) {
    const LabeledTuple t = sanitizer.sanitize(profiles.row(i), rng);
    x.clear();
    encode_features(t.tuple, x);
    set.add(x, t.sampled);
  }
  return set;
}

LearningSet compromised_learning_set(const RandomSamplingSanitizer& sanitizer,
                                     std::span<const LabeledTuple> compromised) {
  if (compromised.empty()) {
    throw InvalidArgument("no compromised profiles: learning set is empty");
  }
  LearningSet set(feature_layout(sanitizer), sanitizer.domain().d(),
                  Provenance::kCompromised);
  std::vector<std::uint32_t> x;
  for (const auto& t : compromised) {
    x.clear();
    encode_features(t.tuple, x);
    set.add(x, t.sampled);
  }
  return set;
}

LearningSet build_learning_set(AttackModel model,
                               const RandomSamplingSanitizer& sanitizer,
                               const Histograms* estimated_raw, std::size_t s,
                               std::span<const LabeledTuple> compromised,
                               Rng& rng) {
  if (model != AttackModel::kPk && estimated_raw == nullptr) {
    throw InvalidArgument("NK and HM models need estimated frequencies");
  }
  switch (model) {
    case AttackModel::kNk:
      return synthetic_learning_set(sanitizer, *estimated_raw, s, rng);
    case AttackModel::kPk:
      return compromised_learning_set(sanitizer, compromised);
    case AttackModel::kHm: {
      LearningSet set = synthetic_learning_set(sanitizer, *estimated_raw, s, rng);
      set.append(compromised_learning_set(sanitizer, compromised));
      return set;
    }
  }
  throw InvalidArgument("unknown attack model");
}

std::vector<std::size_t> predict_sampled(const Classifier& classifier,
                                         std::span<const SurveyTuple> tuples) {
  std::vector<std::size_t> out;
  out.reserve(tuples.size());
  std::vector<std::uint32_t> x;
  for (const auto& t : tuples) {
    x.clear();
    encode_features(t, x);
    out.push_back(classifier.predict(x));
  }
  return out;
}

InferenceResult infer_sampled_attribute(const Classifier& classifier,
                                        std::span<const LabeledTuple> testing) {
  InferenceResult result;
  if (testing.empty()) return result;
  result.predictions.reserve(testing.size());
  std::vector<std::uint32_t> x;
  std::size_t correct = 0;
  for (const auto& t : testing) {
    x.clear();
    encode_features(t.tuple, x);
    const std::size_t guess = classifier.predict(x);
    result.predictions.push_back(guess);
    if (guess == t.sampled) ++correct;
  }
  result.aif_acc = 100.0 * static_cast<double>(correct) /
                   static_cast<double>(testing.size());
  return result;
}

AttrInferenceOutcome run_attr_inference(const Dataset& dataset,
                                        const AttrInferenceConfig& config,
                                        const PriorSet* priors,
                                        std::uint64_t seed) {
  if (!config.scheme.random_sampling()) {
    throw InvalidArgument("attribute inference targets RS+FD and RS+RFD only");
  }
  const std::size_t n = dataset.n();
  if (n == 0) throw InvalidArgument("empty dataset");
  const auto sanitizer = RandomSamplingSanitizer::for_scheme(
      config.scheme, dataset.domain(), config.epsilon, priors);

  std::vector<LabeledTuple> tuples;
  tuples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, {kUserStream, i}));
    tuples.push_back(sanitizer.sanitize(dataset.row(i), rng));
  }

  Histograms estimated;
  if (config.model != AttackModel::kPk) {
    auto counts = sanitizer.zero_counts();
    for (const auto& t : tuples) sanitizer.accumulate(t.tuple, counts);
    estimated = sanitizer.estimate_from_counts(counts, n);
  }

  std::size_t n_pk = 0;
  if (config.model != AttackModel::kNk) {
    n_pk = static_cast<std::size_t>(
        std::llround(config.compromised_fraction * static_cast<double>(n)));
    if (n_pk == 0) {
      throw InvalidArgument("no compromised profiles: learning set is empty");
    }
    if (n_pk >= n) throw InvalidArgument("no users left to test on");
    Rng split(derive_seed(seed, {kSplitStream}));
    auto order = sample_without_replacement(n, n, split);
    std::vector<LabeledTuple> shuffled;
    shuffled.reserve(n);
    for (std::size_t i : order) shuffled.push_back(std::move(tuples[i]));
    tuples = std::move(shuffled);
  }
  const std::span<const LabeledTuple> compromised(tuples.data(), n_pk);
  const std::span<const LabeledTuple> testing(tuples.data() + n_pk, n - n_pk);

  const std::size_t s = static_cast<std::size_t>(
      std::llround(config.synthetic_multiplier * static_cast<double>(n)));
  Rng synth(derive_seed(seed, {kSyntheticStream}));
  const LearningSet train = build_learning_set(
      config.model, sanitizer, config.model == AttackModel::kPk ? nullptr : &estimated,
      s, compromised, synth);

  auto classifier = make_classifier(config.classifier);
  classifier->train(train);
  const InferenceResult result = infer_sampled_attribute(*classifier, testing);

  AttrInferenceOutcome out;
  out.aif_acc = result.aif_acc;
  out.baseline = 100.0 / static_cast<double>(dataset.d());
  out.train_rows = train.size();
  out.test_rows = testing.size();
  out.constant_classifier = classifier->constant();
  return out;
}

}  // namespace ldpsim
