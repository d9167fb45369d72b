// Copyright 2026 The envassume Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "envassume/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace envassume {

RankSumResult WilcoxonRankSum(std::span<const double> sample_a, std::span<const double> sample_b) {
  RankSumResult result;
  const double n1 = static_cast<double>(sample_a.size());
  const double n2 = static_cast<double>(sample_b.size());
  if (sample_a.empty() || sample_b.empty()) return result;

  struct Entry {
    double value;
    bool from_a;
  };
  std::vector<Entry> pooled;
  pooled.reserve(sample_a.size() + sample_b.size());
  for (double v : sample_a) pooled.push_back({v, true});
  for (double v : sample_b) pooled.push_back({v, false});
  std::stable_sort(pooled.begin(), pooled.end(),
                   [](const Entry& x, const Entry& y) { return x.value < y.value; });

  double tie_term = 0.0;  // sum of t^3 - t over tie groups
  for (std::size_t i = 0; i < pooled.size();) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j].value == pooled[i].value) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (pooled[k].from_a) result.rank_sum += rank;
    }
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }

  const double n = n1 + n2;
  result.u = result.rank_sum - n1 * (n1 + 1.0) / 2.0;
  const double mean = n1 * n2 / 2.0;
  const double variance = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
  if (!(variance > 0.0)) return result;
  const double sd = std::sqrt(variance);
  const double deviation = std::abs(result.u - mean) - 0.5;
  result.z = std::copysign(deviation / sd, result.u - mean);
  result.p_value = std::min(1.0, std::erfc(deviation / sd / std::sqrt(2.0)));
  return result;
}

double Median(std::span<const double> values) {
  if (values.empty()) return std::nan("");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
}

}  // namespace envassume
