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

// Regenerates the bundled CSV fixtures under data/.
//
//   make_fixtures <out-dir> [seed]

#include <cstdlib>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "ldpsim/data.h"
#include "ldpsim/rng.h"
#include "ldpsim/synthetic.h"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: make_fixtures <out-dir> [seed]\n";
    return 2;
  }
  const std::string dir = argv[1];
  const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 20230101;
  try {
    ldpsim::Rng rng(ldpsim::derive_seed(seed, {0xf1}));
    const auto big = ldpsim::adult_like_dataset(1000, rng);
    ldpsim::write_dataset(big, dir + "/adult_like_1000.csv");
    std::vector<std::size_t> head(100);
    std::iota(head.begin(), head.end(), 0);
    ldpsim::write_dataset(big.rows(head), dir + "/adult_like_100.csv");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
