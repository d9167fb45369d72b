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

#ifndef ENVASSUME_REQUIREMENT_HPP
#define ENVASSUME_REQUIREMENT_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "envassume/expr.hpp"
#include "envassume/model.hpp"

namespace envassume {

enum class Comparison { kLess, kLessEq, kGreater, kGreaterEq };

enum class FormulaKind { kAtom, kNot, kAnd, kOr, kImplies, kAlways, kEventually };

struct FormulaNode;
using FormulaPtr = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FormulaKind kind = FormulaKind::kAtom;
  // kAtom: lhs `cmp` rhs. Names inside lhs/rhs are bound to indices of the
  // owning Requirement's signal_names().
  Expr lhs;
  Comparison cmp = Comparison::kLessEq;
  Expr rhs;
  std::optional<double> scale;
  // kAlways / kEventually window, relative to the evaluation time.
  double from = 0.0;
  double to = 0.0;
  std::vector<FormulaPtr> children;
};

// A temporal-logic requirement with quantitative semantics in [-1, 1].
//
// Text syntax (lowest to highest precedence):
//   formula  := disj ('implies' formula)?
//   disj     := conj ('or' conj)*
//   conj     := unary ('and' unary)*
//   unary    := 'not' unary
//             | ('always' | 'eventually') '[' num ',' num ']' ':' formula
//             | ('always' | 'eventually') '[' num ',' num ']' unary
//             | '(' formula ')' | atom
//   atom     := expr ('<' | '<=' | '>' | '>=') expr ('@' num)?
// `@ s` sets the atom's normalization scale.
class Requirement {
 public:
  Requirement() = default;
  explicit Requirement(FormulaPtr root);

  // Throws ParseError.
  static Requirement Parse(std::string_view text);

  const FormulaPtr& root() const { return root_; }
  const std::vector<std::string>& signal_names() const { return names_; }

  // Latest time, relative to t = 0, that evaluation reads.
  double Horizon() const;

  // Throws UndeclaredNameError for a name the model neither reads nor writes.
  void Validate(const ModelSpec& model) const;

  // Atoms without an explicit scale get the widest declared range among the
  // outputs they mention (1 when none is declared).
  Requirement WithDefaultScales(const ModelSpec& model) const;

  // Negation in negation-normal form; implications are expanded.
  Requirement Negate() const;

  std::string ToString() const;

  friend bool operator==(const Requirement& a, const Requirement& b);

 private:
  FormulaPtr root_;
  std::vector<std::string> names_;
};

enum class Verdict { kPass, kFail };

inline Verdict VerdictOf(double robustness) {
  return robustness >= 0.0 ? Verdict::kPass : Verdict::kFail;
}
std::string_view ToString(Verdict v);

// Degree of satisfaction at t = 0, in [-1, 1]. Atom margins are divided by
// their scale and clamped; and/or are min/max, always/eventually are min/max
// over the window samples. Throws HorizonError if the trace is too short and
// CoverageError if a signal is missing.
double Robustness(const SimulationTrace& trace, const Requirement& req);

// Like Robustness, but windows are cut at the end of the trace.
double BoundedRobustness(const SimulationTrace& trace, const Requirement& req);

// Boolean semantics with exact comparisons.
bool Satisfied(const SimulationTrace& trace, const Requirement& req);

}  // namespace envassume

#endif  // ENVASSUME_REQUIREMENT_HPP
