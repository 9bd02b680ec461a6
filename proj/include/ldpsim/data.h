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

#ifndef LDPSIM_DATA_H_
#define LDPSIM_DATA_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ldpsim/domain.h"
#include "ldpsim/multidim.h"
#include "ldpsim/rng.h"

namespace ldpsim {

// n x d table of value indices, row-major.
class Dataset {
 public:
  Dataset() = default;
  Dataset(MultiDomain domain, std::vector<std::size_t> cells,
          std::vector<std::string> identities = {});

  std::size_t n() const { return d() == 0 ? 0 : cells_.size() / d(); }
  std::size_t d() const { return domain_.d(); }
  const MultiDomain& domain() const { return domain_; }
  std::span<const std::size_t> row(std::size_t i) const {
    return std::span<const std::size_t>(cells_).subspan(i * d(), d());
  }
  std::size_t at(std::size_t i, std::size_t j) const {
    return cells_[i * d() + j];
  }
  const std::vector<std::size_t>& cells() const { return cells_; }
  const std::vector<std::string>& identities() const { return identities_; }

  Dataset rows(std::span<const std::size_t> indices) const;
  Dataset columns(std::span<const std::size_t> attributes) const;

 private:
  MultiDomain domain_;
  std::vector<std::size_t> cells_;
  std::vector<std::string> identities_;
};

struct Schema {
  // Categorical columns to load, in order. Empty means every column except
  // the identity column.
  std::vector<std::string> columns;
  std::optional<std::string> identity_column;
};

// CSV with a header row. Value dictionaries are built in order of first
// appearance, so the same file always yields the same indexing. Fields are
// trimmed of surrounding blanks. Throws DataError on unreadable input,
// ragged rows, missing columns, empty fields or a file with no data rows.
Dataset load_dataset(const std::string& path, const Schema& schema = {});
Dataset read_dataset(std::istream& in, const Schema& schema = {});

// Writes labels (not indices) with a header; identity column first if any.
void write_dataset(const Dataset& dataset, const std::string& path);

using Histograms = std::vector<std::vector<double>>;

enum class FrequencyFlavor { kTrue, kEstimatedRaw, kEstimatedClipped, kPrior };

struct FrequencyTable {
  FrequencyFlavor flavor = FrequencyFlavor::kTrue;
  Histograms freqs;
  // Number of users the table was computed from.
  std::size_t n = 0;

  std::size_t d() const { return freqs.size(); }
};

FrequencyTable true_frequencies(const Dataset& dataset);

// Clips every attribute's raw estimates at zero and renormalizes. Throws
// InvalidArgument when an attribute has no positive mass left.
FrequencyTable clipped(const FrequencyTable& raw);

// One draw from Laplace(0, scale) by inverse CDF.
double sample_laplace(double scale, Rng& rng);

// Perturbs every histogram with Laplace noise of scale 2 / (n eps_attr),
// eps_attr = total_epsilon / d, then clips and renormalizes. An attribute
// whose noisy histogram has no positive mass falls back to uniform and
// increments *fallbacks.
PriorSet laplace_prior(const FrequencyTable& truth, double total_epsilon,
                       std::size_t d, Rng& rng,
                       std::size_t* fallbacks = nullptr);

// `count` rows with independent per-attribute categorical draws.
Dataset synthesize_profiles(const MultiDomain& domain,
                            const FrequencyTable& table, std::size_t count,
                            Rng& rng);

// (1/d) sum_j (1/k_j) sum_v (f - f_hat)^2. Throws InvalidArgument on a shape
// mismatch.
double mse_avg(const Histograms& truth, const Histograms& estimate);

}  // namespace ldpsim

#endif  // LDPSIM_DATA_H_
