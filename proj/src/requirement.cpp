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

#include "envassume/requirement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "envassume/errors.hpp"
#include "envassume/lexer.hpp"

namespace envassume {

namespace {

constexpr double kTimeTolerance = 1e-9;

std::shared_ptr<FormulaNode> MakeNode(FormulaKind kind) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = kind;
  return n;
}

bool IsKeyword(const Token& t) {
  static const char* kWords[] = {"and", "or", "not", "implies", "always", "eventually"};
  if (t.kind != TokenKind::kIdent) return false;
  for (const char* w : kWords) {
    if (t.text == w) return true;
  }
  return false;
}

class FormulaParser {
 public:
  explicit FormulaParser(TokenStream& ts) : ts_(ts) {}

  FormulaPtr ParseFormula() {
    FormulaPtr lhs = ParseDisjunction();
    if (ts_.AcceptIdent("implies")) {
      auto n = MakeNode(FormulaKind::kImplies);
      n->children = {lhs, ParseFormula()};
      return n;
    }
    return lhs;
  }

 private:
  FormulaPtr ParseDisjunction() {
    FormulaPtr lhs = ParseConjunction();
    while (ts_.AcceptIdent("or")) {
      auto n = MakeNode(FormulaKind::kOr);
      n->children = {lhs, ParseConjunction()};
      lhs = n;
    }
    return lhs;
  }

  FormulaPtr ParseConjunction() {
    FormulaPtr lhs = ParseUnary();
    while (ts_.AcceptIdent("and")) {
      auto n = MakeNode(FormulaKind::kAnd);
      n->children = {lhs, ParseUnary()};
      lhs = n;
    }
    return lhs;
  }

  FormulaPtr ParseUnary() {
    if (ts_.AcceptIdent("not")) {
      auto n = MakeNode(FormulaKind::kNot);
      n->children = {ParseUnary()};
      return n;
    }
    if (ts_.IsIdent("always") || ts_.IsIdent("eventually")) {
      const bool always = ts_.Take().text == "always";
      auto n = MakeNode(always ? FormulaKind::kAlways : FormulaKind::kEventually);
      const Token at = ts_.Peek();
      ts_.ExpectSymbol("[");
      n->from = ts_.ExpectNumber();
      ts_.ExpectSymbol(",");
      n->to = ts_.ExpectNumber();
      ts_.ExpectSymbol("]");
      if (!(n->from >= 0.0) || !(n->from <= n->to)) {
        ts_.Fail("malformed interval: need 0 <= from <= to", at);
      }
      n->children = {ts_.AcceptSymbol(":") ? ParseFormula() : ParseUnary()};
      return n;
    }
    if (ts_.IsSymbol("(")) {
      const std::size_t mark = ts_.position();
      try {
        ts_.Take();
        FormulaPtr inner = ParseFormula();
        ts_.ExpectSymbol(")");
        // "(x) <= 1": the parenthesized part was an expression after all.
        if (!IsComparison()) return inner;
      } catch (const ParseError&) {
      }
      ts_.Rewind(mark);
    }
    return ParseAtom();
  }

  bool IsComparison() const {
    return ts_.IsSymbol("<") || ts_.IsSymbol("<=") || ts_.IsSymbol(">") ||
           ts_.IsSymbol(">=") || ts_.IsSymbol("=") || ts_.IsSymbol("==") ||
           ts_.IsSymbol("+") || ts_.IsSymbol("-") || ts_.IsSymbol("*") ||
           ts_.IsSymbol("/");
  }

  FormulaPtr ParseAtom() {
    if (IsKeyword(ts_.Peek())) ts_.Fail("expected atom");
    auto n = MakeNode(FormulaKind::kAtom);
    n->lhs = Expr::Parse(ts_);
    const Token op = ts_.Take();
    if (op.kind != TokenKind::kSymbol) ts_.Fail("expected comparison", op);
    if (op.text == "<") {
      n->cmp = Comparison::kLess;
    } else if (op.text == "<=") {
      n->cmp = Comparison::kLessEq;
    } else if (op.text == ">") {
      n->cmp = Comparison::kGreater;
    } else if (op.text == ">=") {
      n->cmp = Comparison::kGreaterEq;
    } else if (op.text == "=" || op.text == "==") {
      ts_.Fail("equality is not allowed in requirements", op);
    } else {
      ts_.Fail("expected comparison", op);
    }
    n->rhs = Expr::Parse(ts_);
    if (ts_.AcceptSymbol("@")) {
      const Token at = ts_.Peek();
      const double s = ts_.ExpectNumber();
      if (!(s > 0.0)) ts_.Fail("scale must be positive", at);
      n->scale = s;
    }
    return n;
  }

  TokenStream& ts_;
};

const char* ComparisonText(Comparison c) {
  switch (c) {
    case Comparison::kLess:
      return "<";
    case Comparison::kLessEq:
      return "<=";
    case Comparison::kGreater:
      return ">";
    case Comparison::kGreaterEq:
      return ">=";
  }
  return "?";
}

Comparison Flip(Comparison c) {
  switch (c) {
    case Comparison::kLess:
      return Comparison::kGreaterEq;
    case Comparison::kLessEq:
      return Comparison::kGreater;
    case Comparison::kGreater:
      return Comparison::kLessEq;
    case Comparison::kGreaterEq:
      return Comparison::kLess;
  }
  return c;
}

int FormulaPrecedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::kImplies:
      return 1;
    case FormulaKind::kOr:
      return 2;
    case FormulaKind::kAnd:
      return 3;
    default:
      return 4;
  }
}

void Print(const FormulaNode& n, std::string& out, int parent_prec) {
  const int prec = FormulaPrecedence(n.kind);
  const bool paren = prec < parent_prec;
  if (paren) out += '(';
  switch (n.kind) {
    case FormulaKind::kAtom:
      out += n.lhs.ToString();
      out += ' ';
      out += ComparisonText(n.cmp);
      out += ' ';
      out += n.rhs.ToString();
      if (n.scale) out += " @ " + FormatNumber(*n.scale);
      break;
    case FormulaKind::kNot:
      out += "not ";
      Print(*n.children[0], out, 4);
      break;
    case FormulaKind::kAnd:
    case FormulaKind::kOr:
      // Left-associative: the right operand needs parentheses at equal
      // precedence to keep the tree shape.
      Print(*n.children[0], out, prec);
      out += n.kind == FormulaKind::kAnd ? " and " : " or ";
      Print(*n.children[1], out, prec + 1);
      break;
    case FormulaKind::kImplies:
      Print(*n.children[0], out, prec + 1);
      out += " implies ";
      Print(*n.children[1], out, prec);
      break;
    case FormulaKind::kAlways:
    case FormulaKind::kEventually:
      out += n.kind == FormulaKind::kAlways ? "always[" : "eventually[";
      out += FormatNumber(n.from) + ", " + FormatNumber(n.to) + "] ";
      Print(*n.children[0], out, 4);
      break;
  }
  if (paren) out += ')';
}

double HorizonOf(const FormulaNode& n) {
  double child = 0.0;
  for (const auto& c : n.children) child = std::max(child, HorizonOf(*c));
  if (n.kind == FormulaKind::kAlways || n.kind == FormulaKind::kEventually) {
    return n.to + child;
  }
  return child;
}

FormulaPtr Rebuild(const FormulaNode& n, std::vector<std::string>& names,
                   std::map<std::string, std::uint32_t>& index) {
  auto copy = std::make_shared<FormulaNode>(n);
  if (n.kind == FormulaKind::kAtom) {
    auto resolve = [&](const std::string& name) -> std::uint32_t {
      auto it = index.find(name);
      if (it != index.end()) return it->second;
      const auto i = static_cast<std::uint32_t>(names.size());
      names.push_back(name);
      index[name] = i;
      return i;
    };
    for (Expr* e : {&copy->lhs, &copy->rhs}) {
      if (!e->DelayedNames().empty()) throw Error("prev() is not allowed in requirements");
      e->Bind(resolve);
    }
  }
  for (auto& c : copy->children) c = Rebuild(*c, names, index);
  return copy;
}

FormulaPtr ToNnf(const FormulaPtr& n, bool negated) {
  switch (n->kind) {
    case FormulaKind::kAtom: {
      if (!negated) return n;
      auto copy = std::make_shared<FormulaNode>(*n);
      copy->cmp = Flip(n->cmp);
      return copy;
    }
    case FormulaKind::kNot:
      return ToNnf(n->children[0], !negated);
    case FormulaKind::kAnd:
    case FormulaKind::kOr: {
      const bool is_and = (n->kind == FormulaKind::kAnd) != negated;
      auto out = MakeNode(is_and ? FormulaKind::kAnd : FormulaKind::kOr);
      out->children = {ToNnf(n->children[0], negated), ToNnf(n->children[1], negated)};
      return out;
    }
    case FormulaKind::kImplies: {
      // a -> b == not a or b; its negation is a and not b.
      auto out = MakeNode(negated ? FormulaKind::kAnd : FormulaKind::kOr);
      out->children = {ToNnf(n->children[0], !negated), ToNnf(n->children[1], negated)};
      return out;
    }
    case FormulaKind::kAlways:
    case FormulaKind::kEventually: {
      const bool is_always = (n->kind == FormulaKind::kAlways) != negated;
      auto out = MakeNode(is_always ? FormulaKind::kAlways : FormulaKind::kEventually);
      out->from = n->from;
      out->to = n->to;
      out->children = {ToNnf(n->children[0], negated)};
      return out;
    }
  }
  return n;
}

FormulaPtr FillScales(const FormulaPtr& n, const ModelSpec& model) {
  auto copy = std::make_shared<FormulaNode>(*n);
  if (n->kind == FormulaKind::kAtom && !n->scale) {
    double width = 0.0;
    for (const Expr* e : {&n->lhs, &n->rhs}) {
      for (const auto& name : e->SameStepNames()) {
        for (const auto& o : model.outputs()) {
          if (o.name == name && o.range) {
            width = std::max(width, o.range->second - o.range->first);
          }
        }
      }
    }
    copy->scale = width > 0.0 ? width : 1.0;
  }
  for (auto& c : copy->children) c = FillScales(c, model);
  return copy;
}

// Samples x names matrix of the signals a requirement reads.
class SampleTable {
 public:
  SampleTable(const SimulationTrace& trace, const std::vector<std::string>& names)
      : domain_(trace.domain()), width_(names.size()) {
    const std::size_t samples = domain_.samples();
    values_.resize(samples * width_);
    for (std::size_t j = 0; j < names.size(); ++j) {
      const Signal* s = trace.Find(names[j]);
      if (s == nullptr) throw CoverageError("trace has no signal '" + names[j] + "'");
      for (std::size_t k = 0; k < samples; ++k) values_[k * width_ + j] = (*s)[k];
    }
  }

  EvalContext At(std::size_t k) const {
    std::span<const double> row(values_.data() + k * width_, width_);
    return EvalContext{row, row, domain_.time(k), domain_.step()};
  }
  const TimeDomain& domain() const { return domain_; }

 private:
  TimeDomain domain_;
  std::size_t width_;
  std::vector<double> values_;
};

struct Window {
  std::size_t first;
  std::size_t last;  // inclusive; first > last means empty
};

Window WindowAt(const TimeDomain& domain, std::size_t k, const FormulaNode& n,
                bool clip) {
  const double t = domain.time(k);
  const double hi = t + n.to;
  if (!clip && hi > domain.end() + kTimeTolerance * std::max(1.0, domain.end())) {
    throw HorizonError("requirement window ends at t=" + FormatNumber(hi) +
                       " past trace end " + FormatNumber(domain.end()));
  }
  Window w{domain.CeilIndex(t + n.from), domain.FloorIndex(hi)};
  return w;
}

double Margin(const FormulaNode& n, const EvalContext& ctx) {
  double lhs = 0.0;
  double rhs = 0.0;
  try {
    lhs = n.lhs.Evaluate(ctx);
    rhs = n.rhs.Evaluate(ctx);
  } catch (const DivisionByZero&) {
    return -std::numeric_limits<double>::infinity();
  }
  const double diff =
      (n.cmp == Comparison::kLess || n.cmp == Comparison::kLessEq) ? rhs - lhs : lhs - rhs;
  return std::isnan(diff) ? -std::numeric_limits<double>::infinity() : diff;
}

double Rob(const FormulaNode& n, const SampleTable& table, std::size_t k, bool clip) {
  switch (n.kind) {
    case FormulaKind::kAtom: {
      const double m = Margin(n, table.At(k)) / n.scale.value_or(1.0);
      return std::clamp(m, -1.0, 1.0);
    }
    case FormulaKind::kNot:
      return -Rob(*n.children[0], table, k, clip);
    case FormulaKind::kAnd:
      return std::min(Rob(*n.children[0], table, k, clip),
                      Rob(*n.children[1], table, k, clip));
    case FormulaKind::kOr:
      return std::max(Rob(*n.children[0], table, k, clip),
                      Rob(*n.children[1], table, k, clip));
    case FormulaKind::kImplies:
      return std::max(-Rob(*n.children[0], table, k, clip),
                      Rob(*n.children[1], table, k, clip));
    case FormulaKind::kAlways:
    case FormulaKind::kEventually: {
      const bool always = n.kind == FormulaKind::kAlways;
      const Window w = WindowAt(table.domain(), k, n, clip);
      double acc = always ? 1.0 : -1.0;
      for (std::size_t j = w.first; j <= w.last && j < table.domain().samples(); ++j) {
        const double v = Rob(*n.children[0], table, j, clip);
        acc = always ? std::min(acc, v) : std::max(acc, v);
      }
      return acc;
    }
  }
  return 0.0;
}

bool Sat(const FormulaNode& n, const SampleTable& table, std::size_t k) {
  switch (n.kind) {
    case FormulaKind::kAtom: {
      const double m = Margin(n, table.At(k));
      return (n.cmp == Comparison::kLess || n.cmp == Comparison::kGreater) ? m > 0.0
                                                                           : m >= 0.0;
    }
    case FormulaKind::kNot:
      return !Sat(*n.children[0], table, k);
    case FormulaKind::kAnd:
      return Sat(*n.children[0], table, k) && Sat(*n.children[1], table, k);
    case FormulaKind::kOr:
      return Sat(*n.children[0], table, k) || Sat(*n.children[1], table, k);
    case FormulaKind::kImplies:
      return !Sat(*n.children[0], table, k) || Sat(*n.children[1], table, k);
    case FormulaKind::kAlways:
    case FormulaKind::kEventually: {
      const bool always = n.kind == FormulaKind::kAlways;
      const Window w = WindowAt(table.domain(), k, n, false);
      for (std::size_t j = w.first; j <= w.last; ++j) {
        const bool v = Sat(*n.children[0], table, j);
        if (always && !v) return false;
        if (!always && v) return true;
      }
      return always;
    }
  }
  return false;
}

}  // namespace

Requirement::Requirement(FormulaPtr root) {
  if (!root) throw Error("requirement has no formula");
  std::map<std::string, std::uint32_t> index;
  root_ = Rebuild(*root, names_, index);
}

Requirement Requirement::Parse(std::string_view text) {
  TokenStream ts(Tokenize(text));
  if (ts.AtEnd()) ts.Fail("empty requirement");
  FormulaParser parser(ts);
  FormulaPtr root = parser.ParseFormula();
  if (!ts.AtEnd()) ts.Fail("unexpected trailing input");
  return Requirement(root);
}

double Requirement::Horizon() const { return HorizonOf(*root_); }

void Requirement::Validate(const ModelSpec& model) const {
  for (const auto& name : names_) {
    bool found = false;
    for (const auto& in : model.inputs()) found = found || in.name == name;
    for (const auto& o : model.outputs()) found = found || o.name == name;
    for (const auto& s : model.states()) found = found || s.name == name;
    if (!found) throw UndeclaredNameError(name);
  }
}

Requirement Requirement::WithDefaultScales(const ModelSpec& model) const {
  return Requirement(FillScales(root_, model));
}

Requirement Requirement::Negate() const { return Requirement(ToNnf(root_, true)); }

std::string Requirement::ToString() const {
  std::string out;
  if (root_) Print(*root_, out, 0);
  return out;
}

bool operator==(const Requirement& a, const Requirement& b) {
  return a.ToString() == b.ToString();
}

std::string_view ToString(Verdict v) { return v == Verdict::kPass ? "pass" : "fail"; }

double Robustness(const SimulationTrace& trace, const Requirement& req) {
  SampleTable table(trace, req.signal_names());
  return Rob(*req.root(), table, 0, false);
}

double BoundedRobustness(const SimulationTrace& trace, const Requirement& req) {
  SampleTable table(trace, req.signal_names());
  return Rob(*req.root(), table, 0, true);
}

bool Satisfied(const SimulationTrace& trace, const Requirement& req) {
  SampleTable table(trace, req.signal_names());
  return Sat(*req.root(), table, 0);
}

}  // namespace envassume
