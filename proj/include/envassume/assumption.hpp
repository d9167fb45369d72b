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

#ifndef ENVASSUME_ASSUMPTION_HPP
#define ENVASSUME_ASSUMPTION_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "envassume/signals.hpp"

namespace envassume {

enum class NodeKind : std::uint8_t {
  kOr,
  kAnd,
  kRel,  // exp `rel` 0
  kAdd,
  kSub,
  kMul,
  kDiv,
  kConst,
  kCp,  // control point (signal, position)
};

// Grammar category of a node. Crossover only swaps subtrees of equal type.
enum class NodeType : std::uint8_t { kOr, kAnd, kRel, kExp };

enum class RelOp : std::uint8_t { kLess, kLessEq, kGreater, kGreaterEq, kEqual };

inline NodeType TypeOf(NodeKind k) {
  switch (k) {
    case NodeKind::kOr:
      return NodeType::kOr;
    case NodeKind::kAnd:
      return NodeType::kAnd;
    case NodeKind::kRel:
      return NodeType::kRel;
    default:
      return NodeType::kExp;
  }
}

inline bool IsBinaryExp(NodeKind k) {
  return k == NodeKind::kAdd || k == NodeKind::kSub || k == NodeKind::kMul ||
         k == NodeKind::kDiv;
}

std::string_view ToString(RelOp op);

// One node of a prefix-ordered tree. `size` counts the node and all of its
// descendants, so the subtree rooted at i is nodes[i, i + size).
struct Node {
  NodeKind kind = NodeKind::kConst;
  RelOp rel = RelOp::kLessEq;
  double value = 0.0;
  std::uint32_t signal = 0;    // kCp: index into the profile's inputs
  std::uint32_t position = 0;  // kCp: 1-based control-point position
  std::uint32_t size = 1;

  friend bool operator==(const Node&, const Node&) = default;
};

struct EvalTolerances {
  double equality = 1e-6;  // `= 0` holds when |exp| <= equality
  double division = 1e-9;  // |denominator| below this makes the rel false
};

// Structural limits enforced on generated trees.
struct TreeLimits {
  std::size_t max_depth = 5;
  std::size_t max_conj = 3;
  std::size_t max_disj = 2;
  double const_min = -100.0;
  double const_max = 100.0;
};

// A monomial: sorted multiset of (signal, position) factors. Empty is the
// constant term.
using Monomial = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

struct Term {
  std::size_t rel = 0;  // index of the rel among the tree's rels, prefix order
  Monomial monomial;
  double coefficient = 0.0;
};

struct TreeStats {
  std::size_t depth = 0;
  std::size_t conjunctions = 0;
  std::size_t disjunctions = 0;
  std::size_t nodes = 0;
  // Polynomial terms of every rel, normalized to the `<= 0` / `< 0` side.
  // Rels whose exp divides by a non-constant are skipped.
  std::vector<Term> terms;
};

// An assumption over control points: or-exp / and-exp / rel / exp per the
// assumption grammar.
//
// Text form:
//   or-exp  := and-exp ('or' and-exp)*
//   and-exp := rel ('and' rel)*
//   rel     := exp ('<' | '<=' | '>' | '>=' | '=') exp | '(' or-exp ')'
//            | 'true' | 'false'
//   exp     := arithmetic over numbers and control points `name[position]`
// A rel whose right side is not the literal 0 is stored as `lhs - rhs op 0`.
class AssumptionTree {
 public:
  AssumptionTree() = default;
  // Takes a prefix-ordered node list; sizes must already be consistent.
  explicit AssumptionTree(std::vector<Node> nodes);

  static AssumptionTree True();   // 0 <= 0
  static AssumptionTree False();  // 1 < 0

  // Throws ParseError, or UndeclaredNameError for an unknown signal.
  static AssumptionTree Parse(std::string_view text, const InputProfile& profile);

  std::span<const Node> nodes() const { return nodes_; }
  const Node& node(std::size_t i) const { return nodes_[i]; }
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }

  // Children of node i, in order.
  std::vector<std::size_t> Children(std::size_t i) const;
  // Index of the parent of node i, or nullopt for the root.
  std::optional<std::size_t> Parent(std::size_t i) const;
  // 1 for the root.
  std::size_t DepthOf(std::size_t i) const;
  // Height of the subtree rooted at i (a single node has height 1).
  std::size_t Height(std::size_t i = 0) const;

  // Copy with the subtree at i replaced by `replacement` (a prefix-ordered
  // subtree with consistent sizes).
  AssumptionTree WithSubtree(std::size_t i, std::span<const Node> replacement) const;
  std::span<const Node> Subtree(std::size_t i) const {
    return std::span<const Node>(nodes_).subspan(i, nodes_[i].size);
  }

  // Positions referenced by cps in the subtree at i, sorted and unique.
  std::vector<std::uint32_t> PositionsIn(std::size_t i) const;

  // Throws StructureError on grammar violations, a rel exp mixing positions,
  // or cps outside the profile. With `limits`, also checks depth, conjunction,
  // disjunction and constant bounds.
  void Validate(const InputProfile& profile,
                const std::optional<TreeLimits>& limits = std::nullopt) const;
  bool IsValid(const InputProfile& profile,
               const std::optional<TreeLimits>& limits = std::nullopt) const;

  std::string ToString(const InputProfile& profile) const;

  friend bool operator==(const AssumptionTree&, const AssumptionTree&) = default;

 private:
  std::vector<Node> nodes_;
};

// Value of the exp rooted at i, reading control point (s, p) via cp(s, p).
// Returns NaN when a denominator is within tol.division of zero.
template <typename CpFn>
double EvaluateExp(std::span<const Node> nodes, std::size_t i, const CpFn& cp,
                   const EvalTolerances& tol) {
  const Node& n = nodes[i];
  switch (n.kind) {
    case NodeKind::kConst:
      return n.value;
    case NodeKind::kCp:
      return cp(n.signal, n.position);
    default:
      break;
  }
  const std::size_t lhs = i + 1;
  const std::size_t rhs = lhs + nodes[lhs].size;
  const double a = EvaluateExp(nodes, lhs, cp, tol);
  const double b = EvaluateExp(nodes, rhs, cp, tol);
  switch (n.kind) {
    case NodeKind::kAdd:
      return a + b;
    case NodeKind::kSub:
      return a - b;
    case NodeKind::kMul:
      return a * b;
    case NodeKind::kDiv:
      return std::abs(b) < tol.division ? std::numeric_limits<double>::quiet_NaN() : a / b;
    default:
      return std::numeric_limits<double>::quiet_NaN();
  }
}

bool Compare(RelOp op, double v, const EvalTolerances& tol);

// Whether x satisfies a. Total: guarded divisions make their rel false.
bool Evaluate(const AssumptionTree& a, const ControlPointAssignment& x,
              const EvalTolerances& tol = {});

TreeStats CountStats(const AssumptionTree& a);

// ---------------------------------------------------------------------------
// Signal form.

// ∀t ∈ [from, to) (or [from, to] when `closed`): exp(u(t)) rel 0. A clause
// whose exp reads no signal is time independent and has no interval.
struct SignalClause {
  std::vector<Node> exp;  // cps are read as signal values; positions ignored
  RelOp rel = RelOp::kLessEq;
  bool time_independent = false;
  double from = 0.0;
  double to = 0.0;
  bool closed = false;

  friend bool operator==(const SignalClause&, const SignalClause&) = default;
};

// Disjunction of constraints, each a conjunction of clauses.
//
// Text form:
//   assumption := constraint ('or' constraint)*
//   constraint := clause ('and' clause)* | '(' constraint ')'
//   clause     := 'forall' 't' 'in' '[' num ',' num (')' | ']') ':' sexp rel 0
//               | sexp rel 0
//   sexp       := arithmetic over numbers and signal samples `name(t)`
struct SignalAssumption {
  std::vector<std::vector<SignalClause>> constraints;

  static SignalAssumption Parse(std::string_view text, const InputProfile& profile);
  std::string ToString(const InputProfile& profile) const;

  friend bool operator==(const SignalAssumption&, const SignalAssumption&) = default;
};

// Each rel over position j becomes a clause on [(j-1)I, jI); the last
// position's interval is closed at the end of the domain. Throws
// StructureError when a rel mixes positions.
SignalAssumption ToSignalAssumption(const AssumptionTree& a, const InputProfile& profile,
                                    const TimeDomain& domain);

// Whether the bundle satisfies the assumption at every sample of every clause
// interval.
bool Satisfies(const SignalAssumption& a, const SignalBundle& inputs,
               const InputProfile& profile, const EvalTolerances& tol = {});

// JSON document with the tree text, nested tree, stats and signal form.
std::string ToJson(const AssumptionTree& a, const InputProfile& profile,
                   const TimeDomain& domain);

}  // namespace envassume

#endif  // ENVASSUME_ASSUMPTION_HPP
