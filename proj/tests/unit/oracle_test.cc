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


#include "ldpsim/oracle.h"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "ldpsim/error.h"
#include "ldpsim/stats.h"

namespace ldpsim {
namespace {

// Distribution of omega-SS outputs for true value v, built by enumerating all
// size-omega subsets and weighting those containing v by e^eps.
std::map<std::vector<std::size_t>, double> enumerate_ss(std::size_t k,
                                                        std::size_t omega,
                                                        double eps,
                                                        std::size_t v) {
  std::map<std::vector<std::size_t>, double> out;
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != omega) continue;
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (1u << i)) members.push_back(i);
    }
    const double w = (mask & (1u << v)) ? std::exp(eps) : 1.0;
    out[members] = w;
    total += w;
  }
  for (auto& [subset, w] : out) w /= total;
  return out;
}

TEST(ProtocolParams, ClosedForms) {
  const auto grr = protocol_params(Protocol::kGrr, std::log(2.0), 2);
  EXPECT_NEAR(grr.p, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(grr.q, 1.0 / 3.0, 1e-12);

  const auto oue = protocol_params(Protocol::kOue, std::log(3.0), 17);
  EXPECT_NEAR(oue.p, 0.5, 1e-12);
  EXPECT_NEAR(oue.q, 0.25, 1e-12);

  const auto olh = protocol_params(Protocol::kOlh, std::log(3.0), 8);
  EXPECT_EQ(olh.aux, 4u);
  EXPECT_NEAR(olh.q, 0.25, 1e-12);
  EXPECT_EQ(protocol_params(Protocol::kOlh, 0.01, 8).aux, 2u);
  EXPECT_EQ(protocol_params(Protocol::kOlh, 40.0, 8).aux, kMaxOlhRange);
}

TEST(ProtocolParams, SubsetSelectionMatchesEnumeration) {
  const double eps = std::log(3.0);
  const auto ss = protocol_params(Protocol::kSs, eps, 8);
  ASSERT_EQ(ss.aux, 2u);
  EXPECT_NEAR(ss.p, 0.5, 1e-12);
  double p = 0.0, q = 0.0;
  for (const auto& [subset, w] : enumerate_ss(8, 2, eps, 0)) {
    for (std::size_t m : subset) {
      if (m == 0) p += w;
      if (m == 1) q += w;
    }
  }
  EXPECT_NEAR(ss.p, p, 1e-12);
  EXPECT_NEAR(ss.q, q, 1e-12);
}

TEST(ProtocolParams, RejectsDegenerateInput) {
  EXPECT_THROW(protocol_params(Protocol::kGrr, 1.0, 1), DegenerateDomain);
  EXPECT_THROW(protocol_params(Protocol::kGrr, 0.0, 4), InvalidArgument);
  EXPECT_THROW(protocol_params(Protocol::kGrr, -1.0, 4), InvalidArgument);
  EXPECT_THROW(protocol_params(Protocol::kGrr, INFINITY, 4), InvalidArgument);
}

TEST(ProtocolNames, RoundTrip) {
  for (Protocol p : kAllProtocols) {
    EXPECT_EQ(parse_protocol(protocol_name(p)), p);
  }
  EXPECT_THROW(parse_protocol("rappor"), InvalidArgument);
}

TEST(Randomize, GrrNearlyNoiselessAtLargeEpsilon) {
  const auto params = protocol_params(Protocol::kGrr, 50.0, 4);
  Rng rng(1);
  int hits = 0;
  for (int i = 0; i < 100000; ++i) {
    hits += std::get<ValueReport>(randomize(2, params, rng)).value == 2;
  }
  EXPECT_GE(hits, 99990);
}

TEST(Randomize, GrrOutputDistribution) {
  const auto params = protocol_params(Protocol::kGrr, 1.0, 5);
  Rng rng(2);
  std::vector<std::uint64_t> counts(5);
  for (int i = 0; i < 100000; ++i) {
    ++counts[std::get<ValueReport>(randomize(3, params, rng)).value];
  }
  std::vector<double> probs(5, params.q);
  probs[3] = params.p;
  EXPECT_GT(chi_square_gof(counts, probs).p_value, 0.01);
}

TEST(Randomize, SueBitProbabilities) {
  const auto params = protocol_params(Protocol::kSue, 1.0, 3);
  Rng rng(3);
  constexpr int kN = 100000;
  std::vector<int> ones(3);
  for (int i = 0; i < kN; ++i) {
    const auto bits = std::get<BitsReport>(randomize(0, params, rng)).bits;
    ASSERT_EQ(bits.size(), 3u);
    for (int b = 0; b < 3; ++b) ones[b] += bits[b];
  }
  const auto check = [&](int count, double prob) {
    const double sigma = std::sqrt(kN * prob * (1 - prob));
    EXPECT_LT(std::abs(count - kN * prob), 3 * sigma);
  };
  check(ones[0], params.p);
  check(ones[1], params.q);
  check(ones[2], params.q);
}

TEST(Randomize, SubsetSizeIsOmega) {
  const auto params = protocol_params(Protocol::kSs, 1e-4, 6);
  EXPECT_EQ(params.aux, 3u);
  Rng rng(4);
  for (std::size_t v = 0; v < 6; ++v) {
    for (int i = 0; i < 200; ++i) {
      const auto r = std::get<SubsetReport>(randomize(v, params, rng));
      ASSERT_EQ(r.members.size(), 3u);
      ASSERT_TRUE(std::is_sorted(r.members.begin(), r.members.end()));
    }
  }
}

TEST(Randomize, SubsetDistributionMatchesEnumeration) {
  const double eps = 1.5;
  const auto params = protocol_params(Protocol::kSs, eps, 6);
  const auto exact = enumerate_ss(6, params.aux, eps, 4);
  std::map<std::vector<std::size_t>, std::size_t> index;
  std::vector<double> probs;
  for (const auto& [subset, w] : exact) {
    index[subset] = probs.size();
    probs.push_back(w);
  }
  std::vector<std::uint64_t> counts(probs.size());
  Rng rng(5);
  for (int i = 0; i < 100000; ++i) {
    ++counts[index.at(std::get<SubsetReport>(randomize(4, params, rng)).members)];
  }
  EXPECT_GT(chi_square_gof(counts, probs).p_value, 0.01);
}

TEST(Randomize, OlhSupportRate) {
  const auto params = protocol_params(Protocol::kOlh, 2.0, 20);
  Rng rng(6);
  constexpr int kN = 100000;
  int own = 0, other = 0;
  for (int i = 0; i < kN; ++i) {
    const auto r = randomize(7, params, rng);
    own += supports(r, 7, params);
    other += supports(r, 8, params);
  }
  const auto check = [&](int count, double prob) {
    const double sigma = std::sqrt(kN * prob * (1 - prob));
    EXPECT_LT(std::abs(count - kN * prob), 3 * sigma);
  };
  check(own, params.p);
  check(other, params.q);
}

TEST(Randomize, RejectsOutOfDomainValue) {
  Rng rng(7);
  for (Protocol p : kAllProtocols) {
    EXPECT_THROW(randomize(5, protocol_params(p, 1.0, 5), rng), OutOfDomain);
  }
}

TEST(Supports, Examples) {
  const auto grr = protocol_params(Protocol::kGrr, 1.0, 5);
  EXPECT_TRUE(supports(ValueReport{3}, 3, grr));
  EXPECT_FALSE(supports(ValueReport{3}, 2, grr));
  const auto ss = protocol_params(Protocol::kSs, 1.0, 5);
  EXPECT_FALSE(supports(SubsetReport{{1, 4}}, 2, ss));
  EXPECT_TRUE(supports(SubsetReport{{1, 4}}, 4, ss));
  const auto olh = protocol_params(Protocol::kOlh, 1.0, 5);
  const HashedReport h{0x1234, 1};
  for (std::size_t c = 0; c < 5; ++c) {
    EXPECT_EQ(supports(h, c, olh), olh_hash(0x1234, c, olh.aux) == 1);
  }
  EXPECT_THROW(supports(ValueReport{1}, 1, ss), VariantMismatch);
}

TEST(Estimate, AllReportsOnOneValue) {
  const auto params = protocol_params(Protocol::kGrr, std::log(2.0), 2);
  const std::vector<SanitizedReport> reports(3000, ValueReport{0});
  const auto f = estimate_frequencies(reports, params);
  EXPECT_NEAR(f[0], 2.0, 1e-9);
  EXPECT_NEAR(f[1], -1.0, 1e-9);
}

TEST(Estimate, ZeroSupportIsNegative) {
  const auto params = protocol_params(Protocol::kOue, 1.0, 4);
  const std::vector<std::uint64_t> counts = {0, 10, 10, 10};
  const auto f = estimate_from_counts(counts, 40, params.p, params.q);
  EXPECT_NEAR(f[0], -params.q / (params.p - params.q), 1e-12);
}

TEST(Estimate, ExactExpectedCountsRecoverTruth) {
  const std::vector<double> truth = {0.4, 0.25, 0.2, 0.1, 0.05};
  constexpr std::size_t kN = 1000000;
  for (Protocol protocol : kAllProtocols) {
    const auto params = protocol_params(protocol, 1.3, truth.size());
    std::vector<std::uint64_t> counts;
    for (double f : truth) {
      counts.push_back(static_cast<std::uint64_t>(
          std::llround(kN * (f * (params.p - params.q) + params.q))));
    }
    const auto est = estimate_from_counts(counts, kN, params.p, params.q);
    for (std::size_t v = 0; v < truth.size(); ++v) {
      EXPECT_NEAR(est[v], truth[v], 1e-5) << protocol_name(protocol);
    }
  }
}

TEST(Estimate, GrrWithinThreeSigma) {
  const auto params = protocol_params(Protocol::kGrr, 2.0, 2);
  constexpr std::size_t kN = 100000;
  Rng rng(8);
  std::vector<SanitizedReport> reports;
  for (std::size_t i = 0; i < kN; ++i) {
    reports.push_back(randomize(i < 70000 ? 0 : 1, params, rng));
  }
  const auto est = estimate_frequencies(reports, params);
  const double truth[] = {0.7, 0.3};
  for (int v = 0; v < 2; ++v) {
    const double gamma = params.q + truth[v] * (params.p - params.q);
    const double sd = std::sqrt(gamma * (1 - gamma) / kN) /
                      (params.p - params.q);
    EXPECT_LT(std::abs(est[v] - truth[v]), 3 * sd);
  }
}

TEST(Estimate, EveryProtocolUnbiasedOverRuns) {
  const std::vector<double> truth = {0.5, 0.3, 0.15, 0.05};
  constexpr std::size_t kN = 20000;
  constexpr int kRuns = 20;
  for (Protocol protocol : kAllProtocols) {
    const auto params = protocol_params(protocol, 1.0, truth.size());
    std::vector<std::vector<double>> per_value(truth.size());
    for (int run = 0; run < kRuns; ++run) {
      Rng rng(derive_seed(99, {static_cast<std::uint64_t>(protocol),
                               static_cast<std::uint64_t>(run)}));
      std::vector<std::uint64_t> counts(truth.size());
      for (std::size_t i = 0; i < kN; ++i) {
        const std::size_t v = i < 10000 ? 0 : i < 16000 ? 1 : i < 19000 ? 2 : 3;
        accumulate_support(randomize(v, params, rng), params, counts);
      }
      const auto est = estimate_from_counts(counts, kN, params.p, params.q);
      for (std::size_t v = 0; v < truth.size(); ++v) {
        per_value[v].push_back(est[v]);
      }
    }
    for (std::size_t v = 0; v < truth.size(); ++v) {
      EXPECT_LT(std::abs(mean(per_value[v]) - truth[v]),
                4 * standard_error(per_value[v]))
          << protocol_name(protocol) << " v=" << v;
    }
  }
}

TEST(ClipNormalize, ProducesDistribution) {
  const auto out = clip_normalize(std::vector<double>{0.6, -0.2, 0.6});
  EXPECT_NEAR(out[0], 0.5, 1e-12);
  EXPECT_EQ(out[1], 0.0);
  EXPECT_NEAR(out[2], 0.5, 1e-12);
  EXPECT_THROW(clip_normalize(std::vector<double>{-1.0, -2.0}),
               InvalidArgument);
}

}  // namespace
}  // namespace ldpsim
