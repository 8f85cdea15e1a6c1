/*
   Copyright 2026 The cic Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "cic/model.hpp"

namespace cic::testing {

// Convex mixture of `parts` randomly relabelled cyclic schemes. Each cyclic
// scheme covers every packet with probability M/N, so the mixture does too.
inline CachingScheme random_uniform_coverage(std::size_t n, std::size_t m, int parts,
                                             std::mt19937_64& rng) {
  std::map<std::vector<std::uint32_t>, double> mass;
  std::vector<double> w(parts);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (double& x : w) x = u(rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<std::uint32_t> perm(n);
  for (int k = 0; k < parts; ++k) {
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<std::uint32_t> row;
      for (std::size_t t = 0; t < m; ++t) row.push_back(perm[(s + t) % n]);
      std::sort(row.begin(), row.end());
      mass[row] += w[k] / total / static_cast<double>(n);
    }
  }
  std::vector<CacheRow> rows;
  double sum = 0.0;
  for (auto& [packets, d] : mass) {
    rows.push_back({packets, d});
    sum += d;
  }
  rows.front().density += 1.0 - sum;
  return CachingScheme(n, m, std::move(rows));
}

}  // namespace cic::testing
