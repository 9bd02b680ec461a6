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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

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

// Uniform draw from [0, n) \ {excluded}.
std::size_t uniform_other(std::size_t n, std::size_t excluded, Rng& rng) {
  std::size_t u = rng.index(n - 1);
  return u >= excluded ? u + 1 : u;
}

}  // namespace

std::string_view protocol_name(Protocol protocol) {
  switch (protocol) {
    case Protocol::kGrr:
      return "grr";
    case Protocol::kOlh:
      return "olh";
    case Protocol::kSs:
      return "ss";
    case Protocol::kSue:
      return "sue";
    case Protocol::kOue:
      return "oue";
  }
  return "?";
}

Protocol parse_protocol(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  for (Protocol p : kAllProtocols) {
    if (protocol_name(p) == lower) return p;
  }
  throw InvalidArgument("unknown protocol '" + std::string(name) + "'");
}

ProtocolParams protocol_params(Protocol protocol, double epsilon,
                               std::size_t k) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("epsilon must be positive and finite");
  }
  if (k < 2) {
    throw DegenerateDomain("randomized protocols need k >= 2");
  }
  const double e = std::exp(epsilon);
  const double kd = static_cast<double>(k);
  ProtocolParams out;
  out.protocol = protocol;
  out.epsilon = epsilon;
  out.k = k;
  switch (protocol) {
    case Protocol::kGrr:
      out.p = e / (e + kd - 1.0);
      out.q = 1.0 / (e + kd - 1.0);
      out.q_perturb = out.q;
      break;
    case Protocol::kOlh: {
      const double g_real = std::round(e + 1.0);
      const std::uint64_t g =
          g_real >= static_cast<double>(kMaxOlhRange)
              ? kMaxOlhRange
              : std::max<std::uint64_t>(2, static_cast<std::uint64_t>(g_real));
      const double gd = static_cast<double>(g);
      out.aux = g;
      out.p = e / (e + gd - 1.0);
      out.q_perturb = 1.0 / (e + gd - 1.0);
      out.q = 1.0 / gd;
      break;
    }
    case Protocol::kSs: {
      const double w_real = std::round(kd / (e + 1.0));
      const double w = std::clamp(w_real, 1.0, kd - 1.0);
      out.aux = static_cast<std::uint64_t>(w);
      out.p = w * e / (w * e + kd - w);
      out.q = (w * e * (w - 1.0) + (kd - w) * w) /
              ((kd - 1.0) * (w * e + kd - w));
      out.q_perturb = out.q;
      break;
    }
    case Protocol::kSue: {
      const double h = std::exp(epsilon / 2.0);
      out.p = h / (h + 1.0);
      out.q = 1.0 / (h + 1.0);
      out.q_perturb = out.q;
      break;
    }
    case Protocol::kOue:
      out.p = 0.5;
      out.q = 1.0 / (e + 1.0);
      out.q_perturb = out.q;
      break;
  }
  return out;
}

std::uint64_t olh_hash(std::uint64_t seed, std::size_t value,
                       std::uint64_t g) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(value))) % g;
}

BitsReport randomize_unary(std::optional<std::size_t> hot, double p, double q,
                           std::size_t k, Rng& rng) {
  BitsReport out;
  out.bits.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double prob = (hot && *hot == i) ? p : q;
    out.bits[i] = rng.bernoulli(prob) ? 1 : 0;
  }
  return out;
}

SanitizedReport randomize(std::size_t value, const ProtocolParams& params,
                          Rng& rng) {
  if (value >= params.k) {
    throw OutOfDomain("value " + std::to_string(value) +
                      " outside domain of size " + std::to_string(params.k));
  }
  switch (params.protocol) {
    case Protocol::kGrr: {
      if (rng.bernoulli(params.p)) return ValueReport{value};
      return ValueReport{uniform_other(params.k, value, rng)};
    }
    case Protocol::kOlh: {
      const std::uint64_t seed = rng();
      const std::uint64_t g = params.aux;
      const std::uint64_t h = olh_hash(seed, value, g);
      if (rng.bernoulli(params.p)) return HashedReport{seed, h};
      std::uint64_t other = rng.below(g - 1);
      if (other >= h) ++other;
      return HashedReport{seed, other};
    }
    case Protocol::kSs: {
      const auto omega = static_cast<std::size_t>(params.aux);
      SubsetReport out;
      const bool include = rng.bernoulli(params.p);
      const std::size_t draws = include ? omega - 1 : omega;
      if (include) out.members.push_back(value);
      for (std::size_t u : sample_without_replacement(params.k - 1, draws, rng)) {
        out.members.push_back(u >= value ? u + 1 : u);
      }
      std::sort(out.members.begin(), out.members.end());
      return out;
    }
    case Protocol::kSue:
    case Protocol::kOue:
      return randomize_unary(value, params.p, params.q, params.k, rng);
  }
  throw InvalidArgument("unknown protocol");
}

bool supports(const SanitizedReport& report, std::size_t candidate,
              const ProtocolParams& params) {
  return std::visit(
      Overloaded{
          [&](const ValueReport& r) {
            if (params.protocol != Protocol::kGrr) throw_mismatch(params);
            return r.value == candidate;
          },
          [&](const HashedReport& r) {
            if (params.protocol != Protocol::kOlh) throw_mismatch(params);
            return olh_hash(r.seed, candidate, params.aux) == r.hash;
          },
          [&](const SubsetReport& r) {
            if (params.protocol != Protocol::kSs) throw_mismatch(params);
            return std::binary_search(r.members.begin(), r.members.end(),
                                      candidate);
          },
          [&](const BitsReport& r) {
            if (!is_unary(params.protocol)) throw_mismatch(params);
            return candidate < r.bits.size() && r.bits[candidate] != 0;
          },
      },
      report);
}

void accumulate_support(const SanitizedReport& report,
                        const ProtocolParams& params,
                        std::span<std::uint64_t> counts) {
  std::visit(
      Overloaded{
          [&](const ValueReport& r) {
            if (params.protocol != Protocol::kGrr) throw_mismatch(params);
            if (r.value < counts.size()) ++counts[r.value];
          },
          [&](const HashedReport& r) {
            if (params.protocol != Protocol::kOlh) throw_mismatch(params);
            for (std::size_t c = 0; c < counts.size(); ++c) {
              if (olh_hash(r.seed, c, params.aux) == r.hash) ++counts[c];
            }
          },
          [&](const SubsetReport& r) {
            if (params.protocol != Protocol::kSs) throw_mismatch(params);
            for (std::size_t m : r.members) {
              if (m < counts.size()) ++counts[m];
            }
          },
          [&](const BitsReport& r) {
            if (!is_unary(params.protocol)) throw_mismatch(params);
            const std::size_t len = std::min(r.bits.size(), counts.size());
            for (std::size_t c = 0; c < len; ++c) counts[c] += r.bits[c];
          },
      },
      report);
}

std::vector<std::uint64_t> support_counts(
    std::span<const SanitizedReport> reports, const ProtocolParams& params) {
  std::vector<std::uint64_t> counts(params.k, 0);
  for (const auto& r : reports) accumulate_support(r, params, counts);
  return counts;
}

std::vector<double> estimate_from_counts(std::span<const std::uint64_t> counts,
                                         std::size_t n, double p, double q) {
  if (n == 0) throw InvalidArgument("frequency estimation needs n > 0");
  if (p == q) {
    throw NonIdentifiable("p == q: frequencies are not identifiable");
  }
  const double nd = static_cast<double>(n);
  std::vector<double> out(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out[i] = (static_cast<double>(counts[i]) - nd * q) / (nd * (p - q));
  }
  return out;
}

std::vector<double> estimate_frequencies(
    std::span<const SanitizedReport> reports, const ProtocolParams& params) {
  if (reports.empty()) {
    throw InvalidArgument("frequency estimation needs at least one report");
  }
  return estimate_from_counts(support_counts(reports, params), reports.size(),
                              params.p, params.q);
}

std::vector<double> clip_normalize(std::span<const double> estimates) {
  std::vector<double> out(estimates.begin(), estimates.end());
  double total = 0.0;
  for (double& v : out) {
    v = std::max(v, 0.0);
    total += v;
  }
  if (!(total > 0.0)) {
    throw InvalidArgument("no positive mass left after clipping estimates");
  }
  for (double& v : out) v /= total;
  return out;
}

}  // namespace ldpsim
