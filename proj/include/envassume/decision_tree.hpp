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

#ifndef ENVASSUME_DECISION_TREE_HPP
#define ENVASSUME_DECISION_TREE_HPP

#include <cstddef>

#include "envassume/assumption.hpp"
#include "envassume/testgen.hpp"

namespace envassume {

struct DtConfig {
  std::size_t min_leaf = 5;
  std::size_t max_depth = 10;
};

// CART classifier (Gini impurity, midpoint thresholds) over the control-point
// values of `ts`, labeled pass/fail. The assumption is the disjunction, over
// leaves whose cases all pass, of the threshold conditions on the path to the
// leaf. Every condition compares a single control point with a constant.
// An all-pass suite gives `true`, a suite without a pure passing leaf
// `false`.
AssumptionTree DtGenerate(const TestSuite& ts, const DtConfig& config = {});

}  // namespace envassume

#endif  // ENVASSUME_DECISION_TREE_HPP
