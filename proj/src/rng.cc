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

#include "ldpsim/rng.h"

#include <algorithm>
#include <numeric>

#include "ldpsim/error.h"

namespace ldpsim {

std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> coordinates) {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t c : coordinates) {
    h = splitmix64(h ^ splitmix64(c + 0x632be59bd9b4e019ULL));
  }
  return h;
}

namespace {
__extension__ typedef unsigned __int128 u128;
}  // namespace

std::uint64_t Rng::below(std::uint64_t bound) noexcept {
  u128 m = static_cast<u128>((*this)()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<u128>((*this)()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

CategoricalSampler::CategoricalSampler(std::span<const double> probabilities) {
  if (probabilities.empty()) {
    throw InvalidArgument("categorical distribution must be non-empty");
  }
  cdf_.resize(probabilities.size());
  double total = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (!(probabilities[i] >= 0.0)) {
      throw InvalidArgument("categorical probabilities must be non-negative");
    }
    total += probabilities[i];
    cdf_[i] = total;
  }
  if (!(total > 0.0)) {
    throw InvalidArgument("categorical distribution has zero mass");
  }
  for (double& c : cdf_) c /= total;
  // Last non-zero entry absorbs rounding so every u in [0,1) lands somewhere.
  std::size_t last = cdf_.size() - 1;
  while (last > 0 && probabilities[last] == 0.0) --last;
  for (std::size_t i = last; i < cdf_.size(); ++i) cdf_[i] = 1.0;
}

std::size_t CategoricalSampler::operator()(Rng& rng) const {
  const double u = rng.uniform01();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<std::size_t>(it - cdf_.begin());
}

std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                    std::size_t count,
                                                    Rng& rng) {
  if (count > n) {
    throw InvalidArgument("cannot draw more distinct items than available");
  }
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.index(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace ldpsim
