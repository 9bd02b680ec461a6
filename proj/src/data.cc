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

#include "ldpsim/data.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include "ldpsim/error.h"
#include "ldpsim/oracle.h"

namespace ldpsim {
namespace {

std::string trim(std::string s) {
  const auto blank = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), blank));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), blank).base(), s.end());
  return s;
}

// One CSV record; handles quoted fields with doubled quotes. Returns false at
// end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  std::string line;
  if (!std::getline(in, line)) return false;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0;; ++i) {
    if (i == line.size()) {
      if (quoted) {
        std::string more;
        if (!std::getline(in, more)) throw DataError("unterminated quote");
        line += '\n' + more;
      } else {
        break;
      }
    }
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(std::move(field)));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(trim(std::move(field)));
  return true;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

Dataset::Dataset(MultiDomain domain, std::vector<std::size_t> cells,
                 std::vector<std::string> identities)
    : domain_(std::move(domain)),
      cells_(std::move(cells)),
      identities_(std::move(identities)) {
  const std::size_t d = domain_.d();
  if (d == 0) {
    if (!cells_.empty()) throw InvalidArgument("cells without attributes");
    return;
  }
  if (cells_.size() % d != 0) {
    throw InvalidArgument("cell count is not a multiple of d");
  }
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i] >= domain_.k(i % d)) {
      throw OutOfDomain("dataset cell out of domain");
    }
  }
  if (!identities_.empty() && identities_.size() != n()) {
    throw InvalidArgument("identity column length differs from n");
  }
}

Dataset Dataset::rows(std::span<const std::size_t> indices) const {
  std::vector<std::size_t> cells;
  cells.reserve(indices.size() * d());
  std::vector<std::string> ids;
  for (std::size_t i : indices) {
    if (i >= n()) throw InvalidArgument("row index out of range");
    const auto r = row(i);
    cells.insert(cells.end(), r.begin(), r.end());
    if (!identities_.empty()) ids.push_back(identities_[i]);
  }
  return Dataset(domain_, std::move(cells), std::move(ids));
}

Dataset Dataset::columns(std::span<const std::size_t> attributes) const {
  for (std::size_t j : attributes) {
    if (j >= d()) throw InvalidArgument("column index out of range");
  }
  std::vector<std::size_t> cells;
  cells.reserve(n() * attributes.size());
  for (std::size_t i = 0; i < n(); ++i) {
    for (std::size_t j : attributes) cells.push_back(at(i, j));
  }
  return Dataset(domain_.select(attributes), std::move(cells), identities_);
}

Dataset read_dataset(std::istream& in, const Schema& schema) {
  std::vector<std::string> header;
  if (!read_record(in, header)) throw DataError("missing header row");

  std::optional<std::size_t> id_pos;
  if (schema.identity_column) {
    const auto it =
        std::find(header.begin(), header.end(), *schema.identity_column);
    if (it == header.end()) {
      throw DataError("identity column '" + *schema.identity_column +
                      "' not in header");
    }
    id_pos = static_cast<std::size_t>(it - header.begin());
  }
  std::vector<std::size_t> positions;
  std::vector<std::string> names;
  if (schema.columns.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (id_pos && c == *id_pos) continue;
      positions.push_back(c);
      names.push_back(header[c]);
    }
  } else {
    for (const auto& name : schema.columns) {
      const auto it = std::find(header.begin(), header.end(), name);
      if (it == header.end()) {
        throw DataError("column '" + name + "' not in header");
      }
      positions.push_back(static_cast<std::size_t>(it - header.begin()));
      names.push_back(name);
    }
  }
  if (positions.empty()) throw DataError("no categorical columns selected");

  const std::size_t d = positions.size();
  std::vector<std::vector<std::string>> labels(d);
  std::vector<std::unordered_map<std::string, std::size_t>> dict(d);
  std::vector<std::size_t> cells;
  std::vector<std::string> ids;
  std::vector<std::string> fields;
  std::size_t line = 1;
  while (read_record(in, fields)) {
    ++line;
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != header.size()) {
      throw DataError("line " + std::to_string(line) + " has " +
                      std::to_string(fields.size()) + " fields, header has " +
                      std::to_string(header.size()));
    }
    for (std::size_t j = 0; j < d; ++j) {
      const std::string& value = fields[positions[j]];
      if (value.empty()) {
        throw DataError("empty value in column '" + names[j] + "' at line " +
                        std::to_string(line));
      }
      const auto [it, fresh] = dict[j].try_emplace(value, labels[j].size());
      if (fresh) labels[j].push_back(value);
      cells.push_back(it->second);
    }
    if (id_pos) ids.push_back(fields[*id_pos]);
  }
  if (cells.empty()) throw DataError("no data rows");

  std::vector<AttributeDomain> attrs;
  for (std::size_t j = 0; j < d; ++j) {
    attrs.emplace_back(names[j], std::move(labels[j]));
  }
  return Dataset(MultiDomain(std::move(attrs)), std::move(cells),
                 std::move(ids));
}

Dataset load_dataset(const std::string& path, const Schema& schema) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return read_dataset(in, schema);
}

void write_dataset(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  const bool ids = !dataset.identities().empty();
  if (ids) out << "id";
  for (std::size_t j = 0; j < dataset.d(); ++j) {
    if (ids || j > 0) out << ',';
    out << csv_field(dataset.domain()[j].name());
  }
  out << '\n';
  for (std::size_t i = 0; i < dataset.n(); ++i) {
    if (ids) out << csv_field(dataset.identities()[i]);
    for (std::size_t j = 0; j < dataset.d(); ++j) {
      if (ids || j > 0) out << ',';
      out << csv_field(dataset.domain()[j].label(dataset.at(i, j)));
    }
    out << '\n';
  }
  if (!out) throw DataError("write to '" + path + "' failed");
}

FrequencyTable true_frequencies(const Dataset& dataset) {
  FrequencyTable table;
  table.flavor = FrequencyFlavor::kTrue;
  table.n = dataset.n();
  if (dataset.n() == 0) throw InvalidArgument("empty dataset");
  for (std::size_t j = 0; j < dataset.d(); ++j) {
    table.freqs.emplace_back(dataset.domain().k(j), 0.0);
  }
  for (std::size_t i = 0; i < dataset.n(); ++i) {
    for (std::size_t j = 0; j < dataset.d(); ++j) {
      table.freqs[j][dataset.at(i, j)] += 1.0;
    }
  }
  const double n = static_cast<double>(dataset.n());
  for (auto& f : table.freqs) {
    for (double& v : f) v /= n;
  }
  return table;
}

FrequencyTable clipped(const FrequencyTable& raw) {
  FrequencyTable out;
  out.flavor = FrequencyFlavor::kEstimatedClipped;
  out.n = raw.n;
  for (const auto& f : raw.freqs) out.freqs.push_back(clip_normalize(f));
  return out;
}

double sample_laplace(double scale, Rng& rng) {
  double u = 0.0;
  do {
    u = rng.uniform01();
  } while (u == 0.0);
  return u < 0.5 ? scale * std::log(2.0 * u)
                 : -scale * std::log(2.0 * (1.0 - u));
}

PriorSet laplace_prior(const FrequencyTable& truth, double total_epsilon,
                       std::size_t d, Rng& rng, std::size_t* fallbacks) {
  if (!(total_epsilon > 0.0)) {
    throw InvalidArgument("prior budget must be positive");
  }
  if (truth.n == 0 || d == 0) throw InvalidArgument("prior needs n, d >= 1");
  const double scale =
      2.0 / (static_cast<double>(truth.n) * (total_epsilon / static_cast<double>(d)));
  PriorSet priors;
  for (const auto& f : truth.freqs) {
    std::vector<double> noisy(f.size());
    double total = 0.0;
    for (std::size_t v = 0; v < f.size(); ++v) {
      noisy[v] = std::max(0.0, f[v] + sample_laplace(scale, rng));
      total += noisy[v];
    }
    if (total > 0.0) {
      for (double& x : noisy) x /= total;
    } else {
      std::fill(noisy.begin(), noisy.end(),
                1.0 / static_cast<double>(noisy.size()));
      if (fallbacks != nullptr) ++*fallbacks;
    }
    priors.push_back(std::move(noisy));
  }
  return priors;
}

Dataset synthesize_profiles(const MultiDomain& domain,
                            const FrequencyTable& table, std::size_t count,
                            Rng& rng) {
  validate_priors(table.freqs, domain);
  std::vector<CategoricalSampler> samplers;
  for (const auto& f : table.freqs) samplers.emplace_back(f);
  std::vector<std::size_t> cells;
  cells.reserve(count * domain.d());
  for (std::size_t i = 0; i < count; ++i) {
    for (const auto& s : samplers) cells.push_back(s(rng));
  }
  return Dataset(domain, std::move(cells));
}

double mse_avg(const Histograms& truth, const Histograms& estimate) {
  if (truth.empty() || truth.size() != estimate.size()) {
    throw InvalidArgument("histogram sets differ in d");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < truth.size(); ++j) {
    if (truth[j].empty() || truth[j].size() != estimate[j].size()) {
      throw InvalidArgument("histograms differ in k for attribute " +
                            std::to_string(j));
    }
    double sq = 0.0;
    for (std::size_t v = 0; v < truth[j].size(); ++v) {
      const double diff = truth[j][v] - estimate[j][v];
      sq += diff * diff;
    }
    total += sq / static_cast<double>(truth[j].size());
  }
  return total / static_cast<double>(truth.size());
}

}  // namespace ldpsim
