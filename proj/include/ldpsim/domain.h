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

#ifndef LDPSIM_DOMAIN_H_
#define LDPSIM_DOMAIN_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ldpsim {

// A named categorical attribute. Values are addressed by index 0..k-1; labels
// are kept only for I/O.
class AttributeDomain {
 public:
  AttributeDomain(std::string name, std::vector<std::string> labels);

  // Labels "0".."k-1".
  static AttributeDomain with_size(std::string name, std::size_t k);

  const std::string& name() const { return name_; }
  std::size_t k() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t index) const;
  std::optional<std::size_t> find(const std::string& label) const;

  // Appends a new label and returns its index. Throws if already present.
  std::size_t add(std::string label);

 private:
  std::string name_;
  std::vector<std::string> labels_;
};

// The d attributes collected together by a multidimensional solution.
// d = 1 is accepted as the degenerate single-attribute case.
class MultiDomain {
 public:
  MultiDomain() = default;
  explicit MultiDomain(std::vector<AttributeDomain> attributes);

  static MultiDomain with_sizes(std::span<const std::size_t> ks);

  std::size_t d() const { return attributes_.size(); }
  std::size_t k(std::size_t attribute) const {
    return attributes_[attribute].k();
  }
  std::vector<std::size_t> ks() const;
  const AttributeDomain& operator[](std::size_t attribute) const {
    return attributes_[attribute];
  }
  AttributeDomain& operator[](std::size_t attribute) {
    return attributes_[attribute];
  }
  const std::vector<AttributeDomain>& attributes() const {
    return attributes_;
  }

  // The domain restricted to the listed attributes, in the listed order.
  MultiDomain select(std::span<const std::size_t> attributes) const;

 private:
  std::vector<AttributeDomain> attributes_;
};

}  // namespace ldpsim

#endif  // LDPSIM_DOMAIN_H_
