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

#include "envassume/assumption.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include <json.hpp>

#include "envassume/errors.hpp"
#include "envassume/lexer.hpp"

namespace envassume {

namespace {

constexpr std::size_t kMaxPolynomialTerms = 256;

enum class Slot { kOrExp, kAndExp, kExp };

std::vector<Node> Leaf(Node n) {
  n.size = 1;
  return {n};
}

std::vector<Node> ConstNode(double v) {
  Node n;
  n.kind = NodeKind::kConst;
  n.value = v;
  return Leaf(n);
}

std::vector<Node> Join(Node head, const std::vector<Node>& a, const std::vector<Node>& b = {}) {
  head.size = static_cast<std::uint32_t>(1 + a.size() + b.size());
  std::vector<Node> out;
  out.reserve(head.size);
  out.push_back(head);
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<Node> JoinKind(NodeKind kind, const std::vector<Node>& a,
                           const std::vector<Node>& b = {}) {
  Node head;
  head.kind = kind;
  return Join(head, a, b);
}

std::vector<Node> RelNode(RelOp op, const std::vector<Node>& exp) {
  Node head;
  head.kind = NodeKind::kRel;
  head.rel = op;
  return Join(head, exp);
}

bool IsZeroConst(const std::vector<Node>& exp) {
  return exp.size() == 1 && exp[0].kind == NodeKind::kConst && exp[0].value == 0.0;
}

std::optional<RelOp> AcceptRelOp(TokenStream& ts) {
  if (ts.AcceptSymbol("<")) return RelOp::kLess;
  if (ts.AcceptSymbol("<=")) return RelOp::kLessEq;
  if (ts.AcceptSymbol(">")) return RelOp::kGreater;
  if (ts.AcceptSymbol(">=")) return RelOp::kGreaterEq;
  if (ts.AcceptSymbol("=") || ts.AcceptSymbol("==")) return RelOp::kEqual;
  return std::nullopt;
}

bool AtExpressionContinuation(const TokenStream& ts) {
  for (const char* s : {"<", "<=", ">", ">=", "=", "==", "+", "-", "*", "/"}) {
    if (ts.IsSymbol(s)) return true;
  }
  return false;
}

// Arithmetic parser shared by both text forms. `read_cp` consumes the
// operand after an identifier and returns the cp node.
class ExpParser {
 public:
  using CpReader = std::function<Node(TokenStream&, const Token&)>;

  ExpParser(TokenStream& ts, CpReader read_cp) : ts_(ts), read_cp_(std::move(read_cp)) {}

  std::vector<Node> Sum() {
    std::vector<Node> lhs = Product();
    for (;;) {
      NodeKind kind;
      if (ts_.AcceptSymbol("+")) {
        kind = NodeKind::kAdd;
      } else if (ts_.AcceptSymbol("-")) {
        kind = NodeKind::kSub;
      } else {
        return lhs;
      }
      lhs = JoinKind(kind, lhs, Product());
    }
  }

 private:
  std::vector<Node> Product() {
    std::vector<Node> lhs = Unary();
    for (;;) {
      NodeKind kind;
      if (ts_.AcceptSymbol("*")) {
        kind = NodeKind::kMul;
      } else if (ts_.AcceptSymbol("/")) {
        kind = NodeKind::kDiv;
      } else {
        return lhs;
      }
      lhs = JoinKind(kind, lhs, Unary());
    }
  }

  std::vector<Node> Unary() {
    if (ts_.AcceptSymbol("-")) {
      if (ts_.Peek().kind == TokenKind::kNumber) return ConstNode(-ts_.Take().number);
      return JoinKind(NodeKind::kSub, ConstNode(0.0), Unary());
    }
    if (ts_.AcceptSymbol("+")) return Unary();
    return Primary();
  }

  std::vector<Node> Primary() {
    const Token tok = ts_.Peek();
    if (tok.kind == TokenKind::kNumber) return ConstNode(ts_.Take().number);
    if (ts_.AcceptSymbol("(")) {
      auto inner = Sum();
      ts_.ExpectSymbol(")");
      return inner;
    }
    if (tok.kind != TokenKind::kIdent) ts_.Fail("expected expression");
    ts_.Take();
    return Leaf(read_cp_(ts_, tok));
  }

  TokenStream& ts_;
  CpReader read_cp_;
};

std::uint32_t SignalIndex(const InputProfile& profile, const Token& name) {
  const auto idx = profile.IndexOf(name.text);
  if (!idx) throw UndeclaredNameError(name.text);
  return static_cast<std::uint32_t>(*idx);
}

class TreeParser {
 public:
  TreeParser(TokenStream& ts, const InputProfile& profile) : ts_(ts), profile_(profile) {}

  std::vector<Node> OrExp() {
    std::vector<Node> lhs = AndExp();
    while (ts_.AcceptIdent("or")) lhs = JoinKind(NodeKind::kOr, lhs, AndExp());
    return lhs;
  }

 private:
  std::vector<Node> AndExp() {
    std::vector<Node> lhs = Rel();
    while (ts_.AcceptIdent("and")) lhs = JoinKind(NodeKind::kAnd, lhs, Rel());
    return lhs;
  }

  std::vector<Node> Rel() {
    if (ts_.AcceptIdent("true")) return RelNode(RelOp::kLessEq, ConstNode(0.0));
    if (ts_.AcceptIdent("false")) return RelNode(RelOp::kLess, ConstNode(1.0));
    if (ts_.IsSymbol("(")) {
      const std::size_t mark = ts_.position();
      try {
        ts_.Take();
        auto inner = OrExp();
        ts_.ExpectSymbol(")");
        if (!AtExpressionContinuation(ts_)) return inner;
      } catch (const ParseError&) {
      }
      ts_.Rewind(mark);
    }
    ExpParser exp(ts_, [this](TokenStream& ts, const Token& name) {
      Node n;
      n.kind = NodeKind::kCp;
      n.signal = SignalIndex(profile_, name);
      ts.ExpectSymbol("[");
      const Token at = ts.Peek();
      const double p = ts.ExpectNumber();
      if (p < 1 || p != std::floor(p)) ts.Fail("control-point position must be >= 1", at);
      n.position = static_cast<std::uint32_t>(p);
      ts.ExpectSymbol("]");
      return n;
    });
    auto lhs = exp.Sum();
    const auto op = AcceptRelOp(ts_);
    if (!op) ts_.Fail("expected relational operator");
    auto rhs = exp.Sum();
    if (!IsZeroConst(rhs)) lhs = JoinKind(NodeKind::kSub, lhs, rhs);
    return RelNode(*op, lhs);
  }

  TokenStream& ts_;
  const InputProfile& profile_;
};

int ExpPrecedence(const Node& n) {
  switch (n.kind) {
    case NodeKind::kAdd:
    case NodeKind::kSub:
      return 1;
    case NodeKind::kMul:
    case NodeKind::kDiv:
      return 2;
    case NodeKind::kConst:
      return n.value < 0 ? 3 : 4;
    default:
      return 4;
  }
}

const char* ExpSymbol(NodeKind k) {
  switch (k) {
    case NodeKind::kAdd:
      return " + ";
    case NodeKind::kSub:
      return " - ";
    case NodeKind::kMul:
      return " * ";
    case NodeKind::kDiv:
      return " / ";
    default:
      return "";
  }
}

using CpPrinter = std::function<std::string(const Node&)>;

void PrintExp(std::span<const Node> nodes, std::size_t i, std::string& out, int parent_prec,
              bool right, const CpPrinter& cp) {
  const Node& n = nodes[i];
  const int prec = ExpPrecedence(n);
  const bool paren = prec < parent_prec || (right && prec == parent_prec);
  if (paren) out += '(';
  if (n.kind == NodeKind::kConst) {
    out += FormatNumber(n.value);
  } else if (n.kind == NodeKind::kCp) {
    out += cp(n);
  } else {
    const std::size_t lhs = i + 1;
    PrintExp(nodes, lhs, out, prec, false, cp);
    out += ExpSymbol(n.kind);
    PrintExp(nodes, lhs + nodes[lhs].size, out, prec, true, cp);
  }
  if (paren) out += ')';
}

std::string ExpString(std::span<const Node> nodes, std::size_t i, const CpPrinter& cp) {
  std::string out;
  PrintExp(nodes, i, out, 0, false, cp);
  return out;
}

void PrintTree(const AssumptionTree& a, std::size_t i, std::string& out, const CpPrinter& cp,
               bool in_or) {
  const Node& n = a.node(i);
  switch (n.kind) {
    case NodeKind::kOr: {
      const auto kids = a.Children(i);
      PrintTree(a, kids[0], out, cp, true);
      out += " or ";
      const bool paren = a.node(kids[1]).kind == NodeKind::kOr;
      if (paren) out += '(';
      PrintTree(a, kids[1], out, cp, true);
      if (paren) out += ')';
      break;
    }
    case NodeKind::kAnd: {
      const auto kids = a.Children(i);
      if (in_or) out += '(';
      PrintTree(a, kids[0], out, cp, false);
      out += " and ";
      const bool paren = a.node(kids[1]).kind == NodeKind::kAnd;
      if (paren) out += '(';
      PrintTree(a, kids[1], out, cp, false);
      if (paren) out += ')';
      if (in_or) out += ')';
      break;
    }
    case NodeKind::kRel:
      out += ExpString(a.nodes(), i + 1, cp);
      out += ' ';
      out += ToString(n.rel);
      out += " 0";
      break;
    default:
      throw StructureError("expression node where a rel was expected");
  }
}

// Returns the index one past the subtree at i.
std::size_t CheckNode(const AssumptionTree& a, std::size_t i, Slot slot,
                      const InputProfile& profile) {
  if (i >= a.size()) throw StructureError("truncated tree");
  const Node& n = a.node(i);
  const NodeType type = TypeOf(n.kind);
  const bool fits = (slot == Slot::kOrExp && type != NodeType::kExp) ||
                    (slot == Slot::kAndExp && (type == NodeType::kAnd || type == NodeType::kRel)) ||
                    (slot == Slot::kExp && type == NodeType::kExp);
  if (!fits) throw StructureError("node " + std::to_string(i) + " does not fit its grammar slot");
  std::size_t end = i + 1;
  switch (n.kind) {
    case NodeKind::kOr:
      end = CheckNode(a, end, Slot::kOrExp, profile);
      end = CheckNode(a, end, Slot::kOrExp, profile);
      break;
    case NodeKind::kAnd:
      end = CheckNode(a, end, Slot::kAndExp, profile);
      end = CheckNode(a, end, Slot::kAndExp, profile);
      break;
    case NodeKind::kRel:
      end = CheckNode(a, end, Slot::kExp, profile);
      if (a.PositionsIn(i + 1).size() > 1) {
        throw StructureError("rel at node " + std::to_string(i) +
                             " mixes control points of different positions");
      }
      break;
    case NodeKind::kConst:
      if (!std::isfinite(n.value)) throw StructureError("non-finite constant");
      break;
    case NodeKind::kCp:
      if (n.signal >= profile.signal_count() || n.position < 1 ||
          n.position > profile.control_points()) {
        throw StructureError("control point outside the input profile");
      }
      break;
    default:
      end = CheckNode(a, end, Slot::kExp, profile);
      end = CheckNode(a, end, Slot::kExp, profile);
      break;
  }
  if (n.size != end - i) throw StructureError("inconsistent subtree size at node " + std::to_string(i));
  return end;
}

bool EvalBool(std::span<const Node> nodes, std::size_t i, const ControlPointAssignment& x,
              const EvalTolerances& tol) {
  const Node& n = nodes[i];
  switch (n.kind) {
    case NodeKind::kOr: {
      const std::size_t rhs = i + 1 + nodes[i + 1].size;
      return EvalBool(nodes, i + 1, x, tol) || EvalBool(nodes, rhs, x, tol);
    }
    case NodeKind::kAnd: {
      const std::size_t rhs = i + 1 + nodes[i + 1].size;
      return EvalBool(nodes, i + 1, x, tol) && EvalBool(nodes, rhs, x, tol);
    }
    default: {
      const double v = EvaluateExp(
          nodes, i + 1, [&x](std::uint32_t s, std::uint32_t p) { return x.at(s, p); }, tol);
      return Compare(n.rel, v, tol);
    }
  }
}

using Polynomial = std::map<Monomial, double>;

std::optional<Polynomial> Expand(std::span<const Node> nodes, std::size_t i) {
  const Node& n = nodes[i];
  if (n.kind == NodeKind::kConst) return Polynomial{{Monomial{}, n.value}};
  if (n.kind == NodeKind::kCp) return Polynomial{{Monomial{{n.signal, n.position}}, 1.0}};
  const std::size_t lhs = i + 1;
  auto a = Expand(nodes, lhs);
  auto b = Expand(nodes, lhs + nodes[lhs].size);
  if (!a || !b) return std::nullopt;
  switch (n.kind) {
    case NodeKind::kAdd:
      for (const auto& [m, c] : *b) (*a)[m] += c;
      return a;
    case NodeKind::kSub:
      for (const auto& [m, c] : *b) (*a)[m] -= c;
      return a;
    case NodeKind::kMul: {
      Polynomial out;
      for (const auto& [ma, ca] : *a) {
        for (const auto& [mb, cb] : *b) {
          Monomial m = ma;
          m.insert(m.end(), mb.begin(), mb.end());
          std::sort(m.begin(), m.end());
          out[m] += ca * cb;
        }
      }
      if (out.size() > kMaxPolynomialTerms) return std::nullopt;
      return out;
    }
    case NodeKind::kDiv: {
      // Only division by a constant keeps the exp polynomial.
      double den = 0.0;
      for (const auto& [m, c] : *b) {
        if (!m.empty() && c != 0.0) return std::nullopt;
        if (m.empty()) den = c;
      }
      if (std::abs(den) < EvalTolerances{}.division) return std::nullopt;
      for (auto& [m, c] : *a) c /= den;
      return a;
    }
    default:
      return std::nullopt;
  }
}

void CollectLeaves(const AssumptionTree& a, std::size_t i, NodeKind joiner,
                   std::vector<std::size_t>& out) {
  if (a.node(i).kind == joiner) {
    for (std::size_t c : a.Children(i)) CollectLeaves(a, c, joiner, out);
  } else {
    out.push_back(i);
  }
}

std::string CpName(const InputProfile& profile, const Node& n) {
  return profile.inputs()[n.signal].name + "[" + std::to_string(n.position) + "]";
}

std::string SignalName(const InputProfile& profile, const Node& n) {
  return profile.inputs()[n.signal].name + "(t)";
}

std::string ClauseString(const SignalClause& c, const InputProfile& profile) {
  std::string out;
  if (!c.time_independent) {
    out += "forall t in [" + FormatNumber(c.from) + ", " + FormatNumber(c.to) +
           (c.closed ? "]" : ")") + ": ";
  }
  out += ExpString(c.exp, 0, [&profile](const Node& n) { return SignalName(profile, n); });
  out += ' ';
  out += ToString(c.rel);
  out += " 0";
  return out;
}

class SignalFormParser {
 public:
  SignalFormParser(TokenStream& ts, const InputProfile& profile)
      : ts_(ts), profile_(profile) {}

  SignalAssumption Parse() {
    SignalAssumption out;
    out.constraints.push_back(Constraint());
    while (ts_.AcceptIdent("or")) out.constraints.push_back(Constraint());
    return out;
  }

 private:
  std::vector<SignalClause> Constraint() {
    if (ts_.IsSymbol("(")) {
      const std::size_t mark = ts_.position();
      try {
        ts_.Take();
        auto inner = Constraint();
        ts_.ExpectSymbol(")");
        if (!AtExpressionContinuation(ts_)) return inner;
      } catch (const ParseError&) {
      }
      ts_.Rewind(mark);
    }
    std::vector<SignalClause> out{Clause()};
    while (ts_.AcceptIdent("and")) out.push_back(Clause());
    return out;
  }

  SignalClause Clause() {
    SignalClause c;
    if (ts_.AcceptIdent("forall")) {
      if (!ts_.AcceptIdent("t") || !ts_.AcceptIdent("in")) ts_.Fail("expected 't in'");
      ts_.ExpectSymbol("[");
      c.from = ts_.ExpectNumber();
      ts_.ExpectSymbol(",");
      c.to = ts_.ExpectNumber();
      if (ts_.AcceptSymbol("]")) {
        c.closed = true;
      } else {
        ts_.ExpectSymbol(")");
      }
      ts_.ExpectSymbol(":");
    } else {
      c.time_independent = true;
    }
    ExpParser exp(ts_, [this](TokenStream& ts, const Token& name) {
      Node n;
      n.kind = NodeKind::kCp;
      n.signal = SignalIndex(profile_, name);
      ts.ExpectSymbol("(");
      if (!ts.AcceptIdent("t")) ts.Fail("expected '(t)' after a signal name");
      ts.ExpectSymbol(")");
      return n;
    });
    auto lhs = exp.Sum();
    const auto op = AcceptRelOp(ts_);
    if (!op) ts_.Fail("expected relational operator");
    auto rhs = exp.Sum();
    if (!IsZeroConst(rhs)) lhs = JoinKind(NodeKind::kSub, lhs, rhs);
    c.exp = std::move(lhs);
    c.rel = *op;
    const bool reads_signal = std::any_of(c.exp.begin(), c.exp.end(), [](const Node& n) {
      return n.kind == NodeKind::kCp;
    });
    if (c.time_independent && reads_signal) ts_.Fail("clause reading a signal needs 'forall'");
    return c;
  }

  TokenStream& ts_;
  const InputProfile& profile_;
};

nlohmann::json NodeJson(const AssumptionTree& a, std::size_t i, const InputProfile& profile) {
  const Node& n = a.node(i);
  nlohmann::json j;
  switch (n.kind) {
    case NodeKind::kOr:
    case NodeKind::kAnd: {
      j["kind"] = n.kind == NodeKind::kOr ? "or" : "and";
      for (std::size_t c : a.Children(i)) j["children"].push_back(NodeJson(a, c, profile));
      break;
    }
    case NodeKind::kRel:
      j["kind"] = "rel";
      j["op"] = std::string(ToString(n.rel));
      j["exp"] = NodeJson(a, i + 1, profile);
      break;
    case NodeKind::kConst:
      j["kind"] = "const";
      j["value"] = n.value;
      break;
    case NodeKind::kCp:
      j["kind"] = "cp";
      j["signal"] = profile.inputs()[n.signal].name;
      j["position"] = n.position;
      break;
    default:
      j["kind"] = std::string(1, ExpSymbol(n.kind)[1]);
      for (std::size_t c : a.Children(i)) j["children"].push_back(NodeJson(a, c, profile));
      break;
  }
  return j;
}

}  // namespace

std::string_view ToString(RelOp op) {
  switch (op) {
    case RelOp::kLess:
      return "<";
    case RelOp::kLessEq:
      return "<=";
    case RelOp::kGreater:
      return ">";
    case RelOp::kGreaterEq:
      return ">=";
    case RelOp::kEqual:
      return "=";
  }
  return "?";
}

bool Compare(RelOp op, double v, const EvalTolerances& tol) {
  switch (op) {
    case RelOp::kLess:
      return v < 0.0;
    case RelOp::kLessEq:
      return v <= 0.0;
    case RelOp::kGreater:
      return v > 0.0;
    case RelOp::kGreaterEq:
      return v >= 0.0;
    case RelOp::kEqual:
      return std::abs(v) <= tol.equality;
  }
  return false;
}

AssumptionTree::AssumptionTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {}

AssumptionTree AssumptionTree::True() {
  return AssumptionTree(RelNode(RelOp::kLessEq, ConstNode(0.0)));
}

AssumptionTree AssumptionTree::False() {
  return AssumptionTree(RelNode(RelOp::kLess, ConstNode(1.0)));
}

AssumptionTree AssumptionTree::Parse(std::string_view text, const InputProfile& profile) {
  TokenStream ts(Tokenize(text));
  if (ts.AtEnd()) ts.Fail("empty assumption");
  TreeParser parser(ts, profile);
  AssumptionTree tree(parser.OrExp());
  if (!ts.AtEnd()) ts.Fail("unexpected trailing input");
  try {
    tree.Validate(profile);
  } catch (const StructureError& e) {
    throw ParseError(e.what(), 1, 1);
  }
  return tree;
}

std::vector<std::size_t> AssumptionTree::Children(std::size_t i) const {
  const Node& n = nodes_[i];
  if (n.kind == NodeKind::kRel) return {i + 1};
  if (n.kind == NodeKind::kConst || n.kind == NodeKind::kCp) return {};
  return {i + 1, i + 1 + nodes_[i + 1].size};
}

std::optional<std::size_t> AssumptionTree::Parent(std::size_t i) const {
  for (std::size_t j = i; j-- > 0;) {
    if (j + nodes_[j].size > i) return j;
  }
  return std::nullopt;
}

std::size_t AssumptionTree::DepthOf(std::size_t i) const {
  std::size_t depth = 1;
  for (std::size_t j = 0; j < i; ++j) {
    if (j + nodes_[j].size > i) ++depth;
  }
  return depth;
}

std::size_t AssumptionTree::Height(std::size_t i) const {
  std::size_t h = 0;
  for (std::size_t c : Children(i)) h = std::max(h, Height(c));
  return h + 1;
}

AssumptionTree AssumptionTree::WithSubtree(std::size_t i,
                                           std::span<const Node> replacement) const {
  const std::size_t old = nodes_[i].size;
  std::vector<Node> out;
  out.reserve(nodes_.size() - old + replacement.size());
  out.insert(out.end(), nodes_.begin(), nodes_.begin() + static_cast<std::ptrdiff_t>(i));
  out.insert(out.end(), replacement.begin(), replacement.end());
  out.insert(out.end(), nodes_.begin() + static_cast<std::ptrdiff_t>(i + old), nodes_.end());
  const auto delta = static_cast<std::int64_t>(replacement.size()) - static_cast<std::int64_t>(old);
  for (std::size_t j = 0; j < i; ++j) {
    if (j + nodes_[j].size > i) {
      out[j].size = static_cast<std::uint32_t>(static_cast<std::int64_t>(out[j].size) + delta);
    }
  }
  return AssumptionTree(std::move(out));
}

std::vector<std::uint32_t> AssumptionTree::PositionsIn(std::size_t i) const {
  std::vector<std::uint32_t> out;
  for (const Node& n : Subtree(i)) {
    if (n.kind == NodeKind::kCp) out.push_back(n.position);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void AssumptionTree::Validate(const InputProfile& profile,
                              const std::optional<TreeLimits>& limits) const {
  if (nodes_.empty()) throw StructureError("empty assumption");
  if (CheckNode(*this, 0, Slot::kOrExp, profile) != nodes_.size()) {
    throw StructureError("trailing nodes after the root subtree");
  }
  if (!limits) return;
  const TreeStats stats = CountStats(*this);
  if (stats.depth > limits->max_depth) throw StructureError("tree exceeds Max_Depth");
  if (stats.conjunctions > limits->max_conj) throw StructureError("tree exceeds Max_Conj");
  if (stats.disjunctions > limits->max_disj) throw StructureError("tree exceeds Max_Disj");
  for (const Node& n : nodes_) {
    if (n.kind == NodeKind::kConst && (n.value < limits->const_min || n.value > limits->const_max)) {
      throw StructureError("constant " + FormatNumber(n.value) + " outside [Const_Min, Const_Max]");
    }
  }
}

bool AssumptionTree::IsValid(const InputProfile& profile,
                             const std::optional<TreeLimits>& limits) const {
  try {
    Validate(profile, limits);
    return true;
  } catch (const StructureError&) {
    return false;
  }
}

std::string AssumptionTree::ToString(const InputProfile& profile) const {
  std::string out;
  if (!nodes_.empty()) {
    PrintTree(*this, 0, out, [&profile](const Node& n) { return CpName(profile, n); }, false);
  }
  return out;
}

bool Evaluate(const AssumptionTree& a, const ControlPointAssignment& x,
              const EvalTolerances& tol) {
  return EvalBool(a.nodes(), 0, x, tol);
}

TreeStats CountStats(const AssumptionTree& a) {
  TreeStats s;
  s.nodes = a.size();
  if (a.empty()) return s;
  s.depth = a.Height();
  std::size_t rel_index = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Node& n = a.node(i);
    if (n.kind == NodeKind::kOr) ++s.disjunctions;
    if (n.kind == NodeKind::kAnd) ++s.conjunctions;
    if (n.kind != NodeKind::kRel) continue;
    const auto poly = Expand(a.nodes(), i + 1);
    if (poly) {
      const double sign =
          (n.rel == RelOp::kGreater || n.rel == RelOp::kGreaterEq) ? -1.0 : 1.0;
      for (const auto& [m, c] : *poly) {
        if (c != 0.0) s.terms.push_back(Term{rel_index, m, sign * c});
      }
    }
    ++rel_index;
  }
  return s;
}

SignalAssumption ToSignalAssumption(const AssumptionTree& a, const InputProfile& profile,
                                    const TimeDomain& domain) {
  const std::size_t n = profile.control_points();
  const auto times = ControlPointTimes(n, domain);
  SignalAssumption out;
  std::vector<std::size_t> disjuncts;
  CollectLeaves(a, 0, NodeKind::kOr, disjuncts);
  for (std::size_t d : disjuncts) {
    std::vector<std::size_t> rels;
    CollectLeaves(a, d, NodeKind::kAnd, rels);
    std::vector<SignalClause> constraint;
    for (std::size_t r : rels) {
      if (a.node(r).kind != NodeKind::kRel) throw StructureError("malformed conjunction");
      const auto positions = a.PositionsIn(r + 1);
      if (positions.size() > 1) {
        throw StructureError("rel mixes control points of different positions");
      }
      SignalClause c;
      const auto exp = a.Subtree(r + 1);
      c.exp.assign(exp.begin(), exp.end());
      for (Node& node : c.exp) node.position = 0;
      c.rel = a.node(r).rel;
      if (positions.empty()) {
        c.time_independent = true;
      } else {
        const std::size_t j = positions[0];
        c.from = times[j - 1];
        c.closed = j == n;
        c.to = c.closed ? domain.end() : times[j];
      }
      constraint.push_back(std::move(c));
    }
    out.constraints.push_back(std::move(constraint));
  }
  return out;
}

SignalAssumption SignalAssumption::Parse(std::string_view text, const InputProfile& profile) {
  TokenStream ts(Tokenize(text));
  if (ts.AtEnd()) ts.Fail("empty assumption");
  SignalFormParser parser(ts, profile);
  SignalAssumption out = parser.Parse();
  if (!ts.AtEnd()) ts.Fail("unexpected trailing input");
  return out;
}

std::string SignalAssumption::ToString(const InputProfile& profile) const {
  std::string out;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (i > 0) out += " or ";
    const bool paren = constraints.size() > 1 && constraints[i].size() > 1;
    if (paren) out += '(';
    for (std::size_t j = 0; j < constraints[i].size(); ++j) {
      if (j > 0) out += " and ";
      out += ClauseString(constraints[i][j], profile);
    }
    if (paren) out += ')';
  }
  return out;
}

bool Satisfies(const SignalAssumption& a, const SignalBundle& inputs,
               const InputProfile& profile, const EvalTolerances& tol) {
  const TimeDomain& domain = inputs.domain();
  std::vector<const Signal*> signals;
  for (const auto& in : profile.inputs()) signals.push_back(&inputs.Get(in.name));
  for (const auto& constraint : a.constraints) {
    bool all = true;
    for (const auto& c : constraint) {
      if (c.time_independent) {
        const double v = EvaluateExp(
            c.exp, 0, [](std::uint32_t, std::uint32_t) { return 0.0; }, tol);
        all = Compare(c.rel, v, tol);
      } else {
        const std::size_t first = domain.CeilIndex(c.from);
        const std::size_t end = c.closed ? domain.FloorIndex(c.to) + 1 : domain.CeilIndex(c.to);
        for (std::size_t k = first; k < end && all; ++k) {
          const double v = EvaluateExp(
              c.exp, 0, [&](std::uint32_t s, std::uint32_t) { return (*signals[s])[k]; }, tol);
          all = Compare(c.rel, v, tol);
        }
      }
      if (!all) break;
    }
    if (all) return true;
  }
  return false;
}

std::string ToJson(const AssumptionTree& a, const InputProfile& profile,
                   const TimeDomain& domain) {
  const TreeStats stats = CountStats(a);
  nlohmann::json j;
  j["assumption"] = a.ToString(profile);
  j["tree"] = NodeJson(a, 0, profile);
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : stats.terms) {
    nlohmann::json m = nlohmann::json::array();
    for (const auto& [s, p] : t.monomial) {
      m.push_back(profile.inputs()[s].name + "[" + std::to_string(p) + "]");
    }
    terms.push_back({{"rel", t.rel}, {"monomial", m}, {"coefficient", t.coefficient}});
  }
  j["stats"] = {{"depth", stats.depth},
                {"conjunctions", stats.conjunctions},
                {"disjunctions", stats.disjunctions},
                {"nodes", stats.nodes},
                {"terms", terms}};
  j["signal_form"] = ToSignalAssumption(a, profile, domain).ToString(profile);
  return j.dump(2);
}

}  // namespace envassume
