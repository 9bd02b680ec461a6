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

#ifndef LDPSIM_INFERENCE_H_
#define LDPSIM_INFERENCE_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ldpsim/data.h"
#include "ldpsim/multidim.h"
#include "ldpsim/rng.h"

namespace ldpsim {

// How the attacker obtains training data for sampled-attribute inference.
//   kNk  synthetic profiles drawn from the published estimates,
//   kPk  compromised users whose sampled attribute is known,
//   kHm  both.
enum class AttackModel { kNk, kPk, kHm };

std::string_view attack_model_name(AttackModel model);
AttackModel parse_attack_model(std::string_view name);

enum class Provenance { kSynthetic, kCompromised, kMixed };

// Every feature is categorical with the given number of values. GRR tuples
// give one feature per attribute (k_j values); UE tuples give one binary
// feature per bit.
struct FeatureLayout {
  std::vector<std::size_t> cardinalities;

  std::size_t width() const { return cardinalities.size(); }
  bool operator==(const FeatureLayout&) const = default;
};

FeatureLayout feature_layout(const RandomSamplingSanitizer& sanitizer);

// Appends the features of one tuple to `out`.
void encode_features(const SurveyTuple& tuple,
                     std::vector<std::uint32_t>& out);

class LearningSet {
 public:
  LearningSet(FeatureLayout layout, std::size_t classes,
              Provenance provenance);

  void add(std::span<const std::uint32_t> features, std::size_t label);
  // Appends another set with the same layout; the result is kMixed unless
  // both share a provenance.
  void append(const LearningSet& other);

  std::size_t size() const { return labels_.size(); }
  std::size_t classes() const { return classes_; }
  const FeatureLayout& layout() const { return layout_; }
  Provenance provenance() const { return provenance_; }
  std::span<const std::uint32_t> features(std::size_t row) const {
    return std::span<const std::uint32_t>(features_).subspan(
        row * layout_.width(), layout_.width());
  }
  std::size_t label(std::size_t row) const { return labels_[row]; }
  const std::vector<std::size_t>& labels() const { return labels_; }

 private:
  FeatureLayout layout_;
  std::size_t classes_;
  Provenance provenance_;
  std::vector<std::uint32_t> features_;
  std::vector<std::size_t> labels_;
};

class Classifier {
 public:
  virtual ~Classifier() = default;
  // Throws InvalidArgument on an empty learning set.
  virtual void train(const LearningSet& data) = 0;
  virtual std::size_t predict(std::span<const std::uint32_t> features) const = 0;
  virtual std::string name() const = 0;
  // True when training saw a single class and the model always predicts it.
  virtual bool constant() const { return false; }
};

// Categorical Naive Bayes with add-one smoothing on class and feature
// counts. Binary features make it Bernoulli Naive Bayes. Ties go to the
// lowest class index.
class NaiveBayes : public Classifier {
 public:
  void train(const LearningSet& data) override;
  std::size_t predict(std::span<const std::uint32_t> features) const override;
  std::string name() const override { return "naive_bayes"; }
  bool constant() const override { return constant_; }

 private:
  FeatureLayout layout_;
  std::vector<std::size_t> offsets_;
  std::size_t classes_ = 0;
  std::vector<double> log_prior_;
  // log_likelihood_[c * total + offsets_[f] + value]
  std::vector<double> log_likelihood_;
  std::size_t total_ = 0;
  bool constant_ = false;
  std::size_t constant_class_ = 0;
};

// "naive_bayes" is the only built-in model.
std::unique_ptr<Classifier> make_classifier(std::string_view name);

// NK: s synthetic profiles from the clipped estimates, pushed through the
// same sanitizer. Throws InvalidArgument if any attribute's clipped estimate
// has no mass.
LearningSet synthetic_learning_set(const RandomSamplingSanitizer& sanitizer,
                                   const Histograms& estimated_raw,
                                   std::size_t s, Rng& rng);

// PK: tuples of compromised users with their true sampled attribute.
LearningSet compromised_learning_set(const RandomSamplingSanitizer& sanitizer,
                                     std::span<const LabeledTuple> compromised);

// Dispatches on the model. NK needs `estimated_raw`; PK needs a non-empty
// `compromised`; HM needs both and has s + n_pk rows.
LearningSet build_learning_set(AttackModel model,
                               const RandomSamplingSanitizer& sanitizer,
                               const Histograms* estimated_raw, std::size_t s,
                               std::span<const LabeledTuple> compromised,
                               Rng& rng);

struct InferenceResult {
  // Percentage of users whose sampled attribute was predicted correctly.
  double aif_acc = 0.0;
  std::vector<std::size_t> predictions;
};

std::vector<std::size_t> predict_sampled(const Classifier& classifier,
                                         std::span<const SurveyTuple> tuples);

InferenceResult infer_sampled_attribute(const Classifier& classifier,
                                        std::span<const LabeledTuple> testing);

struct AttrInferenceConfig {
  CollectionScheme scheme;
  double epsilon = 1.0;
  AttackModel model = AttackModel::kNk;
  // s = round(synthetic_multiplier * n).
  double synthetic_multiplier = 1.0;
  // n_pk = round(compromised_fraction * n).
  double compromised_fraction = 0.1;
  std::string classifier = "naive_bayes";
};

struct AttrInferenceOutcome {
  double aif_acc = 0.0;
  double baseline = 0.0;
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
  bool constant_classifier = false;
};

// One run: every user sanitizes their row, the aggregator estimates the
// marginals, the attacker trains on the model's learning set and predicts
// the sampled attribute of every user not in the compromised set. `priors`
// is required for RS+RFD schemes.
AttrInferenceOutcome run_attr_inference(const Dataset& dataset,
                                        const AttrInferenceConfig& config,
                                        const PriorSet* priors,
                                        std::uint64_t seed);

}  // namespace ldpsim

#endif  // LDPSIM_INFERENCE_H_
