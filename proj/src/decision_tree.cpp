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

#include "envassume/decision_tree.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

#include "envassume/errors.hpp"

namespace envassume {

namespace {

struct Sample {
  std::span<const double> features;
  bool pass = false;
};

struct Split {
  std::size_t feature = 0;
  double threshold = 0.0;
  double impurity = 0.0;
};

// Tightest bounds seen on one feature along a path.
struct Bounds {
  std::optional<double> upper;  // x <= upper
  std::optional<double> lower;  // x > lower
};

using PathBounds = std::map<std::size_t, Bounds>;

double Gini(std::size_t pass, std::size_t n) {
  if (n == 0) return 0.0;
  const double p = static_cast<double>(pass) / static_cast<double>(n);
  return 2.0 * p * (1.0 - p);
}

class CartBuilder {
 public:
  CartBuilder(const std::vector<Sample>& samples, const DtConfig& config, std::size_t signals,
              std::size_t positions)
      : samples_(samples), config_(config), signals_(signals), positions_(positions) {}

  // Appends one conjunction (as a bound map) per pure passing leaf.
  void Grow(std::vector<std::size_t> idx, std::size_t depth, const PathBounds& path,
            std::vector<PathBounds>& leaves) const {
    std::size_t pass = 0;
    for (std::size_t i : idx) pass += samples_[i].pass ? 1 : 0;
    if (pass == idx.size()) {
      leaves.push_back(path);
      return;
    }
    if (pass == 0 || depth >= config_.max_depth || idx.size() < 2 * config_.min_leaf) return;
    const auto split = BestSplit(idx, pass);
    if (!split) return;
    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (std::size_t i : idx) {
      (samples_[i].features[split->feature] <= split->threshold ? left : right).push_back(i);
    }
    PathBounds lp = path;
    auto& lb = lp[split->feature];
    lb.upper = lb.upper ? std::min(*lb.upper, split->threshold) : split->threshold;
    Grow(std::move(left), depth + 1, lp, leaves);
    PathBounds rp = path;
    auto& rb = rp[split->feature];
    rb.lower = rb.lower ? std::max(*rb.lower, split->threshold) : split->threshold;
    Grow(std::move(right), depth + 1, rp, leaves);
  }

 private:
  std::optional<Split> BestSplit(const std::vector<std::size_t>& idx, std::size_t pass) const {
    const std::size_t n = idx.size();
    const double parent = Gini(pass, n);
    std::optional<Split> best;
    std::vector<std::pair<double, bool>> column(n);
    for (std::size_t f = 0; f < signals_ * positions_; ++f) {
      for (std::size_t k = 0; k < n; ++k) {
        column[k] = {samples_[idx[k]].features[f], samples_[idx[k]].pass};
      }
      std::sort(column.begin(), column.end());
      std::size_t left_pass = 0;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        left_pass += column[k].second ? 1 : 0;
        const std::size_t left_n = k + 1;
        if (column[k].first == column[k + 1].first) continue;
        if (left_n < config_.min_leaf || n - left_n < config_.min_leaf) continue;
        const double impurity =
            (static_cast<double>(left_n) * Gini(left_pass, left_n) +
             static_cast<double>(n - left_n) * Gini(pass - left_pass, n - left_n)) /
            static_cast<double>(n);
        if (!best || impurity < best->impurity) {
          best = Split{f, 0.5 * (column[k].first + column[k + 1].first), impurity};
        }
      }
    }
    if (!best || !(best->impurity < parent)) return std::nullopt;
    return best;
  }

  const std::vector<Sample>& samples_;
  const DtConfig& config_;
  std::size_t signals_;
  std::size_t positions_;
};

std::vector<Node> Condition(std::size_t feature, std::size_t positions, RelOp op,
                            double threshold) {
  Node rel;
  rel.kind = NodeKind::kRel;
  rel.rel = op;
  rel.size = 4;
  Node sub;
  sub.kind = NodeKind::kSub;
  sub.size = 3;
  Node cp;
  cp.kind = NodeKind::kCp;
  cp.signal = static_cast<std::uint32_t>(feature / positions);
  cp.position = static_cast<std::uint32_t>(feature % positions + 1);
  Node c;
  c.kind = NodeKind::kConst;
  c.value = threshold;
  return {rel, sub, cp, c};
}

std::vector<Node> Chain(NodeKind joiner, const std::vector<std::vector<Node>>& parts) {
  std::vector<Node> acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    Node head;
    head.kind = joiner;
    head.size = static_cast<std::uint32_t>(1 + acc.size() + parts[i].size());
    std::vector<Node> next{head};
    next.insert(next.end(), acc.begin(), acc.end());
    next.insert(next.end(), parts[i].begin(), parts[i].end());
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

AssumptionTree DtGenerate(const TestSuite& ts, const DtConfig& config) {
  if (config.min_leaf == 0) throw Error("DT minimum leaf size must be >= 1");
  const std::size_t positions = ts.profile.control_points();
  std::vector<Sample> samples;
  for (const auto& tc : ts.cases) {
    if (tc.ok()) samples.push_back(Sample{tc.assignment.values(), tc.verdict == Verdict::kPass});
  }
  if (samples.empty()) throw Error("test suite has no usable cases");

  std::vector<std::size_t> idx(samples.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<PathBounds> leaves;
  CartBuilder(samples, config, ts.profile.signal_count(), positions)
      .Grow(std::move(idx), 0, {}, leaves);

  if (leaves.empty()) return AssumptionTree::False();
  std::vector<std::vector<Node>> disjuncts;
  for (const auto& path : leaves) {
    if (path.empty()) return AssumptionTree::True();
    std::vector<std::vector<Node>> conds;
    for (const auto& [feature, b] : path) {
      if (b.lower) conds.push_back(Condition(feature, positions, RelOp::kGreater, *b.lower));
      if (b.upper) conds.push_back(Condition(feature, positions, RelOp::kLessEq, *b.upper));
    }
    disjuncts.push_back(Chain(NodeKind::kAnd, conds));
  }
  return AssumptionTree(Chain(NodeKind::kOr, disjuncts));
}

}  // namespace envassume
