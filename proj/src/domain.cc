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

#include "ldpsim/domain.h"

#include <algorithm>
#include <unordered_set>
#include <utility>

#include "ldpsim/error.h"

namespace ldpsim {

AttributeDomain::AttributeDomain(std::string name,
                                 std::vector<std::string> labels)
    : name_(std::move(name)), labels_(std::move(labels)) {
  if (labels_.empty()) {
    throw InvalidArgument("attribute '" + name_ + "' has an empty domain");
  }
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) {
      throw InvalidArgument("attribute '" + name_ + "' repeats label '" + l +
                            "'");
    }
  }
}

AttributeDomain AttributeDomain::with_size(std::string name, std::size_t k) {
  std::vector<std::string> labels;
  labels.reserve(k);
  for (std::size_t i = 0; i < k; ++i) labels.push_back(std::to_string(i));
  return AttributeDomain(std::move(name), std::move(labels));
}

const std::string& AttributeDomain::label(std::size_t index) const {
  if (index >= labels_.size()) {
    throw OutOfDomain("value index " + std::to_string(index) +
                      " outside attribute '" + name_ + "'");
  }
  return labels_[index];
}

std::optional<std::size_t> AttributeDomain::find(
    const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t AttributeDomain::add(std::string label) {
  if (find(label)) {
    throw InvalidArgument("label '" + label + "' already in attribute '" +
                          name_ + "'");
  }
  labels_.push_back(std::move(label));
  return labels_.size() - 1;
}

MultiDomain::MultiDomain(std::vector<AttributeDomain> attributes)
    : attributes_(std::move(attributes)) {
  if (attributes_.empty()) {
    throw InvalidArgument("a multidimensional domain needs d >= 1");
  }
}

MultiDomain MultiDomain::with_sizes(std::span<const std::size_t> ks) {
  std::vector<AttributeDomain> attrs;
  attrs.reserve(ks.size());
  for (std::size_t j = 0; j < ks.size(); ++j) {
    attrs.push_back(AttributeDomain::with_size("A" + std::to_string(j), ks[j]));
  }
  return MultiDomain(std::move(attrs));
}

std::vector<std::size_t> MultiDomain::ks() const {
  std::vector<std::size_t> out;
  out.reserve(attributes_.size());
  for (const auto& a : attributes_) out.push_back(a.k());
  return out;
}

MultiDomain MultiDomain::select(
    std::span<const std::size_t> attributes) const {
  std::vector<AttributeDomain> attrs;
  attrs.reserve(attributes.size());
  for (std::size_t j : attributes) {
    if (j >= attributes_.size()) {
      throw InvalidArgument("attribute index out of range in select()");
    }
    attrs.push_back(attributes_[j]);
  }
  return MultiDomain(std::move(attrs));
}

}  // namespace ldpsim
