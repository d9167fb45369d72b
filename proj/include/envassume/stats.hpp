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

#ifndef ENVASSUME_STATS_HPP
#define ENVASSUME_STATS_HPP

#include <span>

namespace envassume {

struct RankSumResult {
  double rank_sum = 0.0;  // W: sum of the ranks of sample_a in the pooled sample
  double u = 0.0;         // U statistic of sample_a
  double z = 0.0;
  double p_value = 1.0;   // two-sided
};

// Wilcoxon rank-sum (Mann-Whitney) test. Ties get average ranks; the normal
// approximation uses the tie-corrected variance and a continuity correction
// of 0.5. Returns p = 1 when either sample is empty or all values tie.
RankSumResult WilcoxonRankSum(std::span<const double> sample_a, std::span<const double> sample_b);

double Median(std::span<const double> values);

}  // namespace envassume

#endif  // ENVASSUME_STATS_HPP
