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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ldpsim/error.h"
#include "ldpsim/stats.h"
#include "ldpsim/synthetic.h"

namespace ldpsim {
namespace {

const std::size_t kKs[] = {10, 8, 12, 6, 16};

RandomSamplingSanitizer grr_sanitizer(double eps) {
  return RandomSamplingSanitizer::rsfd(MultiDomain::with_sizes(kKs),
                                       RsfdVariant::kGrr, UeFlavor::kOue, eps);
}

Histograms uniform_histograms() {
  Histograms h;
  for (std::size_t k : kKs) h.emplace_back(k, 1.0 / k);
  return h;
}

double binomial_sigma(double pct, std::size_t n) {
  const double p = pct / 100.0;
  return 100.0 * std::sqrt(p * (1 - p) / n);
}

TEST(AttackModel, NamesRoundTrip) {
  for (auto m : {AttackModel::kNk, AttackModel::kPk, AttackModel::kHm}) {
    EXPECT_EQ(parse_attack_model(attack_model_name(m)), m);
  }
  EXPECT_THROW(parse_attack_model("xx"), InvalidArgument);
}

TEST(Features, LayoutFollowsEncoding) {
  const auto grr = grr_sanitizer(1.0);
  EXPECT_EQ(feature_layout(grr).width(), 5u);
  const auto ue = RandomSamplingSanitizer::rsfd(
      MultiDomain::with_sizes(kKs), RsfdVariant::kUeZ, UeFlavor::kSue, 1.0);
  EXPECT_EQ(feature_layout(ue).width(), 52u);
  const std::size_t values[] = {1, 2, 3, 4, 5};
  Rng rng(1);
  std::vector<std::uint32_t> x;
  encode_features(ue.sanitize(values, rng).tuple, x);
  EXPECT_EQ(x.size(), 52u);
}

TEST(NaiveBayes, SeparableClassesAreLearnt) {
  FeatureLayout layout{{3, 2}};
  LearningSet set(layout, 3, Provenance::kCompromised);
  Rng rng(2);
  for (int i = 0; i < 300; ++i) {
    const std::uint32_t label = static_cast<std::uint32_t>(i % 3);
    const std::uint32_t x[] = {label, static_cast<std::uint32_t>(rng.index(2))};
    set.add(x, label);
  }
  NaiveBayes nb;
  nb.train(set);
  EXPECT_FALSE(nb.constant());
  for (std::size_t r = 0; r < set.size(); ++r) {
    EXPECT_EQ(nb.predict(set.features(r)), set.label(r));
  }
}

TEST(NaiveBayes, SingleClassIsConstant) {
  LearningSet set(FeatureLayout{{2}}, 3, Provenance::kSynthetic);
  const std::uint32_t x[] = {1};
  set.add(x, 2);
  auto nb = make_classifier("naive_bayes");
  nb->train(set);
  EXPECT_TRUE(nb->constant());
  const std::uint32_t y[] = {0};
  EXPECT_EQ(nb->predict(y), 2u);
  EXPECT_THROW(make_classifier("boosted_trees"), InvalidArgument);
}

TEST(LearningSets, SyntheticLabelsAreUniform) {
  const auto s = grr_sanitizer(1.0);
  Rng rng(3);
  constexpr std::size_t kS = 20000;
  const auto set = synthetic_learning_set(s, uniform_histograms(), kS, rng);
  ASSERT_EQ(set.size(), kS);
  std::vector<std::uint64_t> counts(5);
  for (std::size_t l : set.labels()) ++counts[l];
  for (auto c : counts) {
    EXPECT_LT(std::abs(static_cast<double>(c) - kS / 5.0),
              3 * std::sqrt(kS * 0.2 * 0.8));
  }
}

TEST(LearningSets, ModelsCombineSources) {
  const auto s = grr_sanitizer(1.0);
  Rng rng(4);
  const Histograms h = uniform_histograms();
  std::vector<LabeledTuple> compromised;
  const std::size_t values[] = {0, 0, 0, 0, 0};
  for (int i = 0; i < 37; ++i) compromised.push_back(s.sanitize(values, rng));

  EXPECT_THROW(build_learning_set(AttackModel::kPk, s, &h, 10, {}, rng),
               InvalidArgument);
  const auto pk = build_learning_set(AttackModel::kPk, s, nullptr, 0,
                                     compromised, rng);
  EXPECT_EQ(pk.size(), 37u);
  EXPECT_EQ(pk.provenance(), Provenance::kCompromised);
  const auto hm = build_learning_set(AttackModel::kHm, s, &h, 100,
                                     compromised, rng);
  EXPECT_EQ(hm.size(), 137u);
  EXPECT_EQ(hm.provenance(), Provenance::kMixed);
  EXPECT_THROW(build_learning_set(AttackModel::kNk, s, nullptr, 10, {}, rng),
               InvalidArgument);
}

TEST(AttrInference, SymmetricUnaryLeaksSampledAttribute) {
  Rng rng(5);
  const Dataset data = zipf_dataset(kKs, 0.5, 5000, rng);
  AttrInferenceConfig cfg;
  cfg.scheme = CollectionScheme::parse("rsfd_sue_z");
  cfg.epsilon = 10.0;
  const auto out = run_attr_inference(data, cfg, nullptr, 6);
  EXPECT_GT(out.aif_acc, 85.0);
  EXPECT_NEAR(out.baseline, 20.0, 1e-12);
}

TEST(AttrInference, UniformDataGivesBaseline) {
  Rng rng(7);
  const Dataset data = uniform_dataset(kKs, 10000, rng);
  for (auto model : {AttackModel::kNk, AttackModel::kPk, AttackModel::kHm}) {
    AttrInferenceConfig cfg;
    cfg.scheme = CollectionScheme::parse("rsfd_grr");
    cfg.epsilon = 4.0;
    cfg.model = model;
    const auto out = run_attr_inference(data, cfg, nullptr, 8);
    EXPECT_LT(std::abs(out.aif_acc - out.baseline),
              3 * binomial_sigma(out.baseline, out.test_rows))
        << attack_model_name(model);
  }
}

TEST(AttrInference, NegligibleBudgetCarriesNoSignal) {
  Rng rng(9);
  const Dataset data = zipf_dataset(kKs, 1.0, 10000, rng);
  AttrInferenceConfig cfg;
  cfg.scheme = CollectionScheme::parse("rsfd_grr");
  cfg.epsilon = 1e-3;
  cfg.model = AttackModel::kPk;
  const auto out = run_attr_inference(data, cfg, nullptr, 10);
  EXPECT_LT(std::abs(out.aif_acc - out.baseline),
            3 * binomial_sigma(out.baseline, out.test_rows) + 1.0);
}

TEST(AttrInference, RealisticFakesWithExactPriorsStayNearBaseline) {
  Rng rng(11);
  const Dataset data = zipf_dataset(kKs, 1.0, 10000, rng);
  const PriorSet truth = true_frequencies(data).freqs;
  for (const char* name : {"rsrfd_grr", "rsrfd_oue_r"}) {
    AttrInferenceConfig cfg;
    cfg.scheme = CollectionScheme::parse(name);
    cfg.epsilon = 10.0;
    const auto out = run_attr_inference(data, cfg, &truth, 12);
    EXPECT_LE(out.aif_acc - out.baseline, 10.0) << name;
  }
}

}  // namespace
}  // namespace ldpsim
