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

#include "envassume/expr.hpp"

#include <algorithm>
#include <cmath>

#include "envassume/errors.hpp"

namespace envassume {

namespace {

int Precedence(ExprOp op) {
  switch (op) {
    case ExprOp::kAdd:
    case ExprOp::kSub:
      return 1;
    case ExprOp::kMul:
    case ExprOp::kDiv:
      return 2;
    case ExprOp::kNeg:
      return 3;
    default:
      return 4;
  }
}

const char* InfixSymbol(ExprOp op) {
  switch (op) {
    case ExprOp::kAdd:
      return " + ";
    case ExprOp::kSub:
      return " - ";
    case ExprOp::kMul:
      return " * ";
    case ExprOp::kDiv:
      return " / ";
    default:
      return "";
  }
}

struct FunctionInfo {
  const char* name;
  ExprOp op;
  int arity;
};

constexpr FunctionInfo kFunctions[] = {
    {"min", ExprOp::kMin, 2},        {"max", ExprOp::kMax, 2},
    {"abs", ExprOp::kAbs, 1},        {"sat", ExprOp::kSat, 3},
    {"saturation", ExprOp::kSat, 3}, {"if", ExprOp::kSelect, 3},
};

}  // namespace

Expr Expr::Parse(TokenStream& tokens) {
  Expr e;
  e.root_ = e.ParseSum(tokens);
  return e;
}

Expr Expr::Parse(std::string_view text) {
  TokenStream tokens(Tokenize(text));
  Expr e = Parse(tokens);
  if (!tokens.AtEnd()) tokens.Fail("unexpected trailing input");
  return e;
}

Expr Expr::Constant(double v) {
  Expr e;
  ExprNode n;
  n.op = ExprOp::kConst;
  n.value = v;
  e.root_ = e.Add(n);
  return e;
}

std::int32_t Expr::Add(ExprNode node) {
  nodes_.push_back(node);
  return static_cast<std::int32_t>(nodes_.size() - 1);
}

std::uint32_t Expr::NameIndex(const std::string& name) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<std::uint32_t>(i);
  }
  names_.push_back(name);
  slots_.push_back(0);
  return static_cast<std::uint32_t>(names_.size() - 1);
}

std::int32_t Expr::ParseSum(TokenStream& tokens) {
  std::int32_t lhs = ParseProduct(tokens);
  for (;;) {
    ExprOp op;
    if (tokens.AcceptSymbol("+")) {
      op = ExprOp::kAdd;
    } else if (tokens.AcceptSymbol("-")) {
      op = ExprOp::kSub;
    } else {
      return lhs;
    }
    const std::int32_t rhs = ParseProduct(tokens);
    ExprNode n;
    n.op = op;
    n.args[0] = lhs;
    n.args[1] = rhs;
    lhs = Add(n);
  }
}

std::int32_t Expr::ParseProduct(TokenStream& tokens) {
  std::int32_t lhs = ParseUnary(tokens);
  for (;;) {
    ExprOp op;
    if (tokens.AcceptSymbol("*")) {
      op = ExprOp::kMul;
    } else if (tokens.AcceptSymbol("/")) {
      op = ExprOp::kDiv;
    } else {
      return lhs;
    }
    const std::int32_t rhs = ParseUnary(tokens);
    ExprNode n;
    n.op = op;
    n.args[0] = lhs;
    n.args[1] = rhs;
    lhs = Add(n);
  }
}

std::int32_t Expr::ParseUnary(TokenStream& tokens) {
  if (tokens.IsSymbol("-")) {
    tokens.Take();
    if (tokens.Peek().kind == TokenKind::kNumber) {
      ExprNode n;
      n.value = -tokens.Take().number;
      return Add(n);
    }
    ExprNode n;
    n.op = ExprOp::kNeg;
    n.args[0] = ParseUnary(tokens);
    return Add(n);
  }
  if (tokens.AcceptSymbol("+")) return ParseUnary(tokens);
  return ParsePrimary(tokens);
}

std::int32_t Expr::ParsePrimary(TokenStream& tokens) {
  const Token& tok = tokens.Peek();
  if (tok.kind == TokenKind::kNumber) {
    ExprNode n;
    n.value = tokens.Take().number;
    return Add(n);
  }
  if (tokens.AcceptSymbol("(")) {
    const std::int32_t inner = ParseSum(tokens);
    tokens.ExpectSymbol(")");
    return inner;
  }
  if (tok.kind != TokenKind::kIdent) tokens.Fail("expected expression");
  const Token name = tokens.Take();
  if (tokens.IsSymbol("(")) {
    tokens.Take();
    if (name.text == "prev") {
      ExprNode n;
      n.op = ExprOp::kPrev;
      n.name = NameIndex(tokens.ExpectIdent());
      tokens.ExpectSymbol(")");
      return Add(n);
    }
    for (const auto& fn : kFunctions) {
      if (name.text != fn.name) continue;
      ExprNode n;
      n.op = fn.op;
      for (int a = 0; a < fn.arity; ++a) {
        if (a > 0) tokens.ExpectSymbol(",");
        n.args[a] = ParseSum(tokens);
      }
      tokens.ExpectSymbol(")");
      return Add(n);
    }
    tokens.Fail("unknown function '" + name.text + "'", name);
  }
  ExprNode n;
  if (name.text == "t") {
    n.op = ExprOp::kTime;
  } else if (name.text == "dt") {
    n.op = ExprOp::kStep;
  } else {
    n.op = ExprOp::kVar;
    n.name = NameIndex(name.text);
  }
  return Add(n);
}

std::vector<std::string> Expr::SameStepNames() const {
  std::vector<std::string> out;
  for (const auto& n : nodes_) {
    if (n.op == ExprOp::kVar &&
        std::find(out.begin(), out.end(), names_[n.name]) == out.end()) {
      out.push_back(names_[n.name]);
    }
  }
  return out;
}

std::vector<std::string> Expr::DelayedNames() const {
  std::vector<std::string> out;
  for (const auto& n : nodes_) {
    if (n.op == ExprOp::kPrev &&
        std::find(out.begin(), out.end(), names_[n.name]) == out.end()) {
      out.push_back(names_[n.name]);
    }
  }
  return out;
}

void Expr::Bind(const std::function<std::uint32_t(const std::string&)>& resolver) {
  for (std::size_t i = 0; i < names_.size(); ++i) slots_[i] = resolver(names_[i]);
}

double Expr::Evaluate(const EvalContext& ctx) const { return Eval(root_, ctx); }

double Expr::Eval(std::int32_t i, const EvalContext& ctx) const {
  const ExprNode& n = nodes_[static_cast<std::size_t>(i)];
  switch (n.op) {
    case ExprOp::kConst:
      return n.value;
    case ExprOp::kVar:
      return ctx.current[slots_[n.name]];
    case ExprOp::kPrev:
      return ctx.previous[slots_[n.name]];
    case ExprOp::kTime:
      return ctx.time;
    case ExprOp::kStep:
      return ctx.step;
    case ExprOp::kNeg:
      return -Eval(n.args[0], ctx);
    case ExprOp::kAdd:
      return Eval(n.args[0], ctx) + Eval(n.args[1], ctx);
    case ExprOp::kSub:
      return Eval(n.args[0], ctx) - Eval(n.args[1], ctx);
    case ExprOp::kMul:
      return Eval(n.args[0], ctx) * Eval(n.args[1], ctx);
    case ExprOp::kDiv: {
      const double num = Eval(n.args[0], ctx);
      const double den = Eval(n.args[1], ctx);
      if (std::abs(den) < kDivisionEpsilon) throw DivisionByZero{};
      return num / den;
    }
    case ExprOp::kMin:
      return std::min(Eval(n.args[0], ctx), Eval(n.args[1], ctx));
    case ExprOp::kMax:
      return std::max(Eval(n.args[0], ctx), Eval(n.args[1], ctx));
    case ExprOp::kAbs:
      return std::abs(Eval(n.args[0], ctx));
    case ExprOp::kSat: {
      const double x = Eval(n.args[0], ctx);
      const double lo = Eval(n.args[1], ctx);
      const double hi = Eval(n.args[2], ctx);
      return std::min(std::max(x, lo), hi);
    }
    case ExprOp::kSelect:
      return Eval(n.args[0], ctx) >= 0.0 ? Eval(n.args[1], ctx) : Eval(n.args[2], ctx);
  }
  return 0.0;
}

std::string Expr::ToString() const {
  std::string out;
  if (root_ >= 0) Print(root_, out, 0, false);
  return out;
}

void Expr::Print(std::int32_t i, std::string& out, int parent_prec, bool right) const {
  const ExprNode& n = nodes_[static_cast<std::size_t>(i)];
  int prec = Precedence(n.op);
  if (n.op == ExprOp::kConst && n.value < 0) prec = 3;
  // Right operands of the same precedence are parenthesized so the printed
  // form parses back into the same tree.
  const bool paren = prec < parent_prec || (right && prec == parent_prec);
  if (paren) out += '(';
  switch (n.op) {
    case ExprOp::kConst:
      out += FormatNumber(n.value);
      break;
    case ExprOp::kVar:
      out += names_[n.name];
      break;
    case ExprOp::kPrev:
      out += "prev(" + names_[n.name] + ")";
      break;
    case ExprOp::kTime:
      out += "t";
      break;
    case ExprOp::kStep:
      out += "dt";
      break;
    case ExprOp::kNeg:
      out += '-';
      Print(n.args[0], out, 3, false);
      break;
    case ExprOp::kAdd:
    case ExprOp::kSub:
    case ExprOp::kMul:
    case ExprOp::kDiv:
      Print(n.args[0], out, prec, false);
      out += InfixSymbol(n.op);
      Print(n.args[1], out, prec, true);
      break;
    default: {
      const char* name = "?";
      int arity = 0;
      for (const auto& fn : kFunctions) {
        if (fn.op == n.op) {
          name = fn.name;
          arity = fn.arity;
          break;
        }
      }
      out += name;
      out += '(';
      for (int a = 0; a < arity; ++a) {
        if (a > 0) out += ", ";
        Print(n.args[a], out, 0, false);
      }
      out += ')';
      break;
    }
  }
  if (paren) out += ')';
}

}  // namespace envassume
