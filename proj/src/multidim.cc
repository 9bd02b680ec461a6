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

#include "ldpsim/multidim.h"

#include <bit>
#include <cmath>
#include <string>
#include <utility>

#include "ldpsim/error.h"

namespace ldpsim {
namespace {

Protocol ue_protocol(UeFlavor flavor) {
  return flavor == UeFlavor::kSue ? Protocol::kSue : Protocol::kOue;
}

std::string_view flavor_name(UeFlavor flavor) {
  return flavor == UeFlavor::kSue ? "sue" : "oue";
}

void check_values(std::span<const std::size_t> values,
                  const MultiDomain& domain) {
  if (values.size() != domain.d()) {
    throw InvalidArgument("tuple has " + std::to_string(values.size()) +
                          " values, domain has d = " +
                          std::to_string(domain.d()));
  }
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (values[j] >= domain.k(j)) {
      throw OutOfDomain("value " + std::to_string(values[j]) +
                        " outside attribute " + std::to_string(j));
    }
  }
}

}  // namespace

CollectionScheme CollectionScheme::parse(std::string_view name,
                                         Protocol protocol) {
  CollectionScheme s;
  s.protocol = protocol;
  if (name == "spl") {
    s.solution = Solution::kSpl;
  } else if (name == "smp") {
    s.solution = Solution::kSmp;
  } else if (name == "rsfd_grr") {
    s.solution = Solution::kRsfdGrr;
  } else if (name == "rsrfd_grr") {
    s.solution = Solution::kRsrfdGrr;
  } else {
    // rsfd_<flavor>_<z|r> or rsrfd_<flavor>_r
    const bool realistic = name.starts_with("rsrfd_");
    const bool uniform = name.starts_with("rsfd_");
    std::string_view rest = name.substr(realistic ? 6 : 5);
    if ((!realistic && !uniform) || rest.size() != 5 || rest[3] != '_') {
      throw InvalidArgument("unknown solution '" + std::string(name) + "'");
    }
    const std::string_view flavor = rest.substr(0, 3);
    const char fake = rest[4];
    if (flavor == "sue") {
      s.flavor = UeFlavor::kSue;
    } else if (flavor == "oue") {
      s.flavor = UeFlavor::kOue;
    } else {
      throw InvalidArgument("unknown UE flavor in '" + std::string(name) +
                            "'");
    }
    if (fake == 'r') {
      s.solution = realistic ? Solution::kRsrfdUeR : Solution::kRsfdUeR;
    } else if (fake == 'z' && !realistic) {
      s.solution = Solution::kRsfdUeZ;
    } else {
      throw InvalidArgument("unknown solution '" + std::string(name) + "'");
    }
    s.protocol = ue_protocol(s.flavor);
  }
  if (s.solution == Solution::kRsfdGrr || s.solution == Solution::kRsrfdGrr) {
    s.protocol = Protocol::kGrr;
  }
  return s;
}

std::string CollectionScheme::name() const {
  const std::string f(flavor_name(flavor));
  switch (solution) {
    case Solution::kSpl:
      return "spl";
    case Solution::kSmp:
      return "smp";
    case Solution::kRsfdGrr:
      return "rsfd_grr";
    case Solution::kRsfdUeZ:
      return "rsfd_" + f + "_z";
    case Solution::kRsfdUeR:
      return "rsfd_" + f + "_r";
    case Solution::kRsrfdGrr:
      return "rsrfd_grr";
    case Solution::kRsrfdUeR:
      return "rsrfd_" + f + "_r";
  }
  return "?";
}

std::string CollectionScheme::protocol_label() const {
  switch (solution) {
    case Solution::kSpl:
    case Solution::kSmp:
      return std::string(protocol_name(protocol));
    case Solution::kRsfdGrr:
    case Solution::kRsrfdGrr:
      return "grr";
    default:
      return std::string(flavor_name(flavor));
  }
}

bool CollectionScheme::unary() const {
  switch (solution) {
    case Solution::kSpl:
    case Solution::kSmp:
      return is_unary(protocol);
    case Solution::kRsfdGrr:
    case Solution::kRsrfdGrr:
      return false;
    default:
      return true;
  }
}

void validate_priors(const PriorSet& priors, const MultiDomain& domain) {
  if (priors.size() != domain.d()) {
    throw InvalidArgument("prior set has " + std::to_string(priors.size()) +
                          " vectors, domain has d = " +
                          std::to_string(domain.d()));
  }
  for (std::size_t j = 0; j < priors.size(); ++j) {
    if (priors[j].size() != domain.k(j)) {
      throw InvalidArgument("prior " + std::to_string(j) +
                            " has the wrong length");
    }
    double total = 0.0;
    for (double v : priors[j]) {
      if (!(v >= 0.0)) {
        throw InvalidArgument("prior " + std::to_string(j) +
                              " has a negative entry");
      }
      total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw InvalidArgument("prior " + std::to_string(j) + " sums to " +
                            std::to_string(total));
    }
  }
}

PriorSet uniform_priors(const MultiDomain& domain) {
  PriorSet out;
  out.reserve(domain.d());
  for (std::size_t j = 0; j < domain.d(); ++j) {
    const std::size_t k = domain.k(j);
    out.emplace_back(k, 1.0 / static_cast<double>(k));
  }
  return out;
}

double amplified_epsilon(double epsilon, std::size_t d) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  if (d == 0) throw InvalidArgument("amplification needs d >= 1");
  return std::log(static_cast<double>(d) * std::expm1(epsilon) + 1.0);
}

SurveyTuple spl_sanitize(std::span<const std::size_t> values,
                         const MultiDomain& domain, Protocol protocol,
                         double epsilon, Rng& rng) {
  check_values(values, domain);
  const double share = epsilon / static_cast<double>(domain.d());
  SurveyTuple out;
  out.solution = Solution::kSpl;
  out.reports.reserve(domain.d());
  for (std::size_t j = 0; j < domain.d(); ++j) {
    const auto params = protocol_params(protocol, share, domain.k(j));
    out.reports.push_back(randomize(values[j], params, rng));
  }
  return out;
}

const SanitizedReport* SmpUserState::memo(std::size_t attribute,
                                          Protocol protocol,
                                          double epsilon) const {
  const auto it = memo_.find(
      {attribute, static_cast<int>(protocol), std::bit_cast<std::uint64_t>(epsilon)});
  return it == memo_.end() ? nullptr : &it->second;
}

void SmpUserState::remember(std::size_t attribute, Protocol protocol,
                            double epsilon, SanitizedReport report) {
  memo_.insert_or_assign(
      Key{attribute, static_cast<int>(protocol),
          std::bit_cast<std::uint64_t>(epsilon)},
      std::move(report));
}

bool SmpUserState::used(std::size_t attribute) const {
  return attribute < used_.size() && used_[attribute];
}

void SmpUserState::mark_used(std::size_t attribute) {
  if (attribute >= used_.size()) used_.resize(attribute + 1, false);
  if (!used_[attribute]) {
    used_[attribute] = true;
    ++used_count_;
  }
}

std::size_t smp_choose_attribute(SmpUserState& state, SamplingMode mode,
                                 std::span<const std::size_t> candidates,
                                 std::size_t d, Rng& rng) {
  std::vector<std::size_t> eligible;
  if (candidates.empty()) {
    for (std::size_t j = 0; j < d; ++j) eligible.push_back(j);
  } else {
    eligible.assign(candidates.begin(), candidates.end());
  }
  if (mode == SamplingMode::kWithoutReplacement) {
    std::erase_if(eligible, [&](std::size_t j) { return state.used(j); });
    if (eligible.empty()) {
      throw SamplingExhausted(
          "every offered attribute was already sampled by this user");
    }
  }
  if (eligible.empty()) throw InvalidArgument("no attribute to sample");
  const std::size_t chosen = eligible[rng.index(eligible.size())];
  state.mark_used(chosen);
  return chosen;
}

SurveyTuple smp_sanitize(std::span<const std::size_t> values,
                         const MultiDomain& domain, Protocol protocol,
                         double epsilon, Rng& rng, SamplingMode mode,
                         SmpUserState& state,
                         std::span<const std::size_t> candidates) {
  check_values(values, domain);
  const std::size_t j =
      smp_choose_attribute(state, mode, candidates, domain.d(), rng);
  SurveyTuple out;
  out.solution = Solution::kSmp;
  out.sampled_attribute = j;
  if (const SanitizedReport* cached = state.memo(j, protocol, epsilon)) {
    out.reports.push_back(*cached);
    return out;
  }
  const auto params = protocol_params(protocol, epsilon, domain.k(j));
  SanitizedReport report = randomize(values[j], params, rng);
  state.remember(j, protocol, epsilon, report);
  out.reports.push_back(std::move(report));
  return out;
}

RandomSamplingSanitizer::RandomSamplingSanitizer(const MultiDomain& domain,
                                                 Solution solution,
                                                 UeFlavor flavor,
                                                 double epsilon, Fake fake,
                                                 PriorSet fake_probs)
    : domain_(domain),
      solution_(solution),
      flavor_(flavor),
      epsilon_(epsilon),
      amplified_(amplified_epsilon(epsilon, domain.d())),
      fake_(fake),
      fake_probs_(std::move(fake_probs)) {
  const bool unary = solution != Solution::kRsfdGrr &&
                     solution != Solution::kRsrfdGrr;
  const Protocol base = unary ? ue_protocol(flavor) : Protocol::kGrr;
  slot_params_.reserve(domain_.d());
  for (std::size_t j = 0; j < domain_.d(); ++j) {
    slot_params_.push_back(protocol_params(base, amplified_, domain_.k(j)));
  }
  if (fake_ != Fake::kZeroVector) {
    fake_samplers_.reserve(domain_.d());
    for (const auto& probs : fake_probs_) fake_samplers_.emplace_back(probs);
  }
}

RandomSamplingSanitizer RandomSamplingSanitizer::rsfd(
    const MultiDomain& domain, RsfdVariant variant, UeFlavor flavor,
    double epsilon) {
  switch (variant) {
    case RsfdVariant::kGrr:
      return {domain, Solution::kRsfdGrr, flavor, epsilon, Fake::kValue,
              uniform_priors(domain)};
    case RsfdVariant::kUeZ:
      return {domain, Solution::kRsfdUeZ, flavor, epsilon, Fake::kZeroVector,
              {}};
    case RsfdVariant::kUeR:
      return {domain, Solution::kRsfdUeR, flavor, epsilon, Fake::kOneHot,
              uniform_priors(domain)};
  }
  throw InvalidArgument("unknown RS+FD variant");
}

RandomSamplingSanitizer RandomSamplingSanitizer::rsrfd(
    const MultiDomain& domain, const PriorSet& priors, RsrfdVariant variant,
    UeFlavor flavor, double epsilon) {
  validate_priors(priors, domain);
  if (variant == RsrfdVariant::kGrr) {
    return {domain, Solution::kRsrfdGrr, flavor, epsilon, Fake::kValue, priors};
  }
  return {domain, Solution::kRsrfdUeR, flavor, epsilon, Fake::kOneHot, priors};
}

RandomSamplingSanitizer RandomSamplingSanitizer::for_scheme(
    const CollectionScheme& scheme, const MultiDomain& domain, double epsilon,
    const PriorSet* priors) {
  switch (scheme.solution) {
    case Solution::kRsfdGrr:
      return rsfd(domain, RsfdVariant::kGrr, scheme.flavor, epsilon);
    case Solution::kRsfdUeZ:
      return rsfd(domain, RsfdVariant::kUeZ, scheme.flavor, epsilon);
    case Solution::kRsfdUeR:
      return rsfd(domain, RsfdVariant::kUeR, scheme.flavor, epsilon);
    case Solution::kRsrfdGrr:
    case Solution::kRsrfdUeR:
      if (priors == nullptr) {
        throw InvalidArgument("RS+RFD needs a prior set");
      }
      return rsrfd(domain, *priors,
                   scheme.solution == Solution::kRsrfdGrr ? RsrfdVariant::kGrr
                                                          : RsrfdVariant::kUeR,
                   scheme.flavor, epsilon);
    default:
      throw InvalidArgument("scheme '" + scheme.name() +
                            "' is not a random-sampling solution");
  }
}

LabeledTuple RandomSamplingSanitizer::sanitize(
    std::span<const std::size_t> values, Rng& rng) const {
  const std::size_t j = rng.index(domain_.d());
  return sanitize_at(values, j, rng);
}

LabeledTuple RandomSamplingSanitizer::sanitize_at(
    std::span<const std::size_t> values, std::size_t sampled, Rng& rng) const {
  check_values(values, domain_);
  if (sampled >= domain_.d()) {
    throw InvalidArgument("sampled attribute out of range");
  }
  LabeledTuple out;
  out.sampled = sampled;
  out.tuple.solution = solution_;
  if (solution_ != Solution::kRsfdGrr && solution_ != Solution::kRsrfdGrr) {
    out.tuple.flavor = flavor_;
  }
  auto& reports = out.tuple.reports;
  reports.reserve(domain_.d());
  for (std::size_t i = 0; i < domain_.d(); ++i) {
    const ProtocolParams& params = slot_params_[i];
    if (i == sampled) {
      reports.push_back(randomize(values[i], params, rng));
      continue;
    }
    switch (fake_) {
      case Fake::kValue:
        reports.push_back(ValueReport{fake_samplers_[i](rng)});
        break;
      case Fake::kZeroVector:
        reports.push_back(
            randomize_unary(std::nullopt, params.p, params.q, params.k, rng));
        break;
      case Fake::kOneHot:
        reports.push_back(randomize_unary(fake_samplers_[i](rng), params.p,
                                          params.q, params.k, rng));
        break;
    }
  }
  return out;
}

std::vector<std::vector<std::uint64_t>> RandomSamplingSanitizer::zero_counts()
    const {
  std::vector<std::vector<std::uint64_t>> counts;
  counts.reserve(domain_.d());
  for (std::size_t j = 0; j < domain_.d(); ++j) {
    counts.emplace_back(domain_.k(j), 0);
  }
  return counts;
}

void RandomSamplingSanitizer::accumulate(
    const SurveyTuple& tuple,
    std::vector<std::vector<std::uint64_t>>& counts) const {
  if (tuple.solution != solution_ || tuple.reports.size() != domain_.d()) {
    throw InvalidArgument("tuple does not belong to this solution");
  }
  for (std::size_t j = 0; j < domain_.d(); ++j) {
    accumulate_support(tuple.reports[j], slot_params_[j], counts[j]);
  }
}

std::vector<std::vector<double>> RandomSamplingSanitizer::estimate(
    std::span<const SurveyTuple> tuples) const {
  if (tuples.empty()) {
    throw InvalidArgument("estimation needs at least one tuple");
  }
  auto counts = zero_counts();
  for (const auto& t : tuples) accumulate(t, counts);
  return estimate_from_counts(counts, tuples.size());
}

std::vector<std::vector<double>> RandomSamplingSanitizer::estimate_from_counts(
    const std::vector<std::vector<std::uint64_t>>& counts,
    std::size_t n) const {
  if (n == 0) throw InvalidArgument("estimation needs n > 0");
  const double nd = static_cast<double>(n);
  const double d = static_cast<double>(domain_.d());
  std::vector<std::vector<double>> out(domain_.d());
  for (std::size_t j = 0; j < domain_.d(); ++j) {
    const double p = slot_params_[j].p;
    const double q = slot_params_[j].q;
    if (p == q) {
      throw NonIdentifiable("p == q: frequencies are not identifiable");
    }
    const double k = static_cast<double>(domain_.k(j));
    out[j].resize(domain_.k(j));
    for (std::size_t v = 0; v < domain_.k(j); ++v) {
      const double c = static_cast<double>(counts[j][v]);
      double f = 0.0;
      switch (solution_) {
        case Solution::kRsfdGrr:
          f = (c * d * k - nd * (d - 1.0 + q * k)) / (nd * k * (p - q));
          break;
        case Solution::kRsfdUeZ:
          f = d * (c - nd * q) / (nd * (p - q));
          break;
        case Solution::kRsfdUeR:
          f = (c * d * k -
               nd * (q * k + (p - q) * (d - 1.0) + q * k * (d - 1.0))) /
              (nd * k * (p - q));
          break;
        case Solution::kRsrfdGrr: {
          const double prior = fake_probs_[j][v];
          f = (d * c - nd * (q + (d - 1.0) * prior)) / (nd * (p - q));
          break;
        }
        case Solution::kRsrfdUeR: {
          const double prior = fake_probs_[j][v];
          f = (d * c -
               nd * (q + (p - q) * (d - 1.0) * prior + q * (d - 1.0))) /
              (nd * (p - q));
          break;
        }
        default:
          throw InvalidArgument("not a random-sampling solution");
      }
      out[j][v] = f;
    }
  }
  return out;
}

SurveyTuple rsfd_sanitize(std::span<const std::size_t> values,
                          const MultiDomain& domain, RsfdVariant variant,
                          UeFlavor flavor, double epsilon, Rng& rng) {
  return RandomSamplingSanitizer::rsfd(domain, variant, flavor, epsilon)
      .sanitize(values, rng)
      .tuple;
}

std::vector<std::vector<double>> rsfd_estimate(
    std::span<const SurveyTuple> tuples, const MultiDomain& domain,
    RsfdVariant variant, UeFlavor flavor, double epsilon) {
  return RandomSamplingSanitizer::rsfd(domain, variant, flavor, epsilon)
      .estimate(tuples);
}

SurveyTuple rsrfd_sanitize(std::span<const std::size_t> values,
                           const MultiDomain& domain, const PriorSet& priors,
                           RsrfdVariant variant, UeFlavor flavor,
                           double epsilon, Rng& rng) {
  return RandomSamplingSanitizer::rsrfd(domain, priors, variant, flavor,
                                        epsilon)
      .sanitize(values, rng)
      .tuple;
}

std::vector<std::vector<double>> rsrfd_estimate(
    std::span<const SurveyTuple> tuples, const MultiDomain& domain,
    const PriorSet& priors, RsrfdVariant variant, UeFlavor flavor,
    double epsilon) {
  return RandomSamplingSanitizer::rsrfd(domain, priors, variant, flavor,
                                        epsilon)
      .estimate(tuples);
}

double rsrfd_variance(RsrfdVariant variant, double frequency, double prior,
                      double p, double q, std::size_t d, std::size_t n) {
  if (n == 0 || d == 0) throw InvalidArgument("variance needs n, d >= 1");
  if (p == q) throw NonIdentifiable("p == q: variance is unbounded");
  const double dd = static_cast<double>(d);
  double gamma = 0.0;
  if (variant == RsrfdVariant::kGrr) {
    gamma = (q + frequency * (p - q) + (dd - 1.0) * prior) / dd;
  } else {
    gamma = (frequency * (p - q) + q + (dd - 1.0) * (prior * (p - q) + q)) / dd;
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw ParameterInconsistency("report probability " +
                                 std::to_string(gamma) + " outside [0, 1]");
  }
  return dd * dd * gamma * (1.0 - gamma) /
         (static_cast<double>(n) * (p - q) * (p - q));
}

}  // namespace ldpsim
