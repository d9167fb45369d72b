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

#ifndef ENVASSUME_EXPR_HPP
#define ENVASSUME_EXPR_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "envassume/lexer.hpp"

namespace envassume {

enum class ExprOp : std::uint8_t {
  kConst,
  kVar,     // current-step value of a named variable
  kPrev,    // unit delay: previous-step value of a named variable
  kTime,    // `t`
  kStep,    // `dt`
  kNeg,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kMin,
  kMax,
  kAbs,
  kSat,     // sat(x, lo, hi)
  kSelect,  // if(c, a, b): a when c >= 0, else b
};

struct ExprNode {
  ExprOp op = ExprOp::kConst;
  double value = 0.0;
  std::uint32_t name = 0;  // index into Expr::names() for kVar / kPrev
  std::int32_t args[3] = {-1, -1, -1};
};

// Thrown by Expr::Evaluate when a denominator is within 1e-12 of zero.
struct DivisionByZero {};

struct EvalContext {
  std::span<const double> current;
  std::span<const double> previous;
  double time = 0.0;
  double step = 0.0;
};

// Infix arithmetic over named variables. Names are resolved to slots of a
// caller-owned value array with Bind() before evaluation.
class Expr {
 public:
  static constexpr double kDivisionEpsilon = 1e-12;

  Expr() = default;

  // Parses an additive expression starting at the stream cursor.
  static Expr Parse(TokenStream& tokens);
  static Expr Parse(std::string_view text);
  static Expr Constant(double v);

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<ExprNode>& nodes() const { return nodes_; }
  std::int32_t root() const { return root_; }

  // Names read at the current step (kVar), excluding unit delays.
  std::vector<std::string> SameStepNames() const;
  // Names read through prev().
  std::vector<std::string> DelayedNames() const;

  // Resolves every referenced name to a slot. The resolver throws for
  // unknown names.
  void Bind(const std::function<std::uint32_t(const std::string&)>& resolver);

  double Evaluate(const EvalContext& ctx) const;
  std::string ToString() const;

  bool operator==(const Expr& other) const { return ToString() == other.ToString(); }

 private:
  std::int32_t ParseSum(TokenStream& tokens);
  std::int32_t ParseProduct(TokenStream& tokens);
  std::int32_t ParseUnary(TokenStream& tokens);
  std::int32_t ParsePrimary(TokenStream& tokens);
  std::int32_t Add(ExprNode node);
  std::uint32_t NameIndex(const std::string& name);
  double Eval(std::int32_t i, const EvalContext& ctx) const;
  void Print(std::int32_t i, std::string& out, int parent_prec, bool right) const;

  std::vector<std::string> names_;
  std::vector<std::uint32_t> slots_;
  std::vector<ExprNode> nodes_;
  std::int32_t root_ = -1;
};

}  // namespace envassume

#endif  // ENVASSUME_EXPR_HPP
