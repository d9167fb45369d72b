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

#include "envassume/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "envassume/errors.hpp"
#include "envassume/lexer.hpp"

namespace envassume {

namespace {

enum class Section { kHeader, kInputs, kStates, kUpdate, kOutputs };

std::optional<Section> SectionFromName(const std::string& name) {
  if (name == "inputs") return Section::kInputs;
  if (name == "states") return Section::kStates;
  if (name == "update") return Section::kUpdate;
  if (name == "outputs") return Section::kOutputs;
  return std::nullopt;
}

std::pair<double, double> ParseRange(TokenStream& ts) {
  ts.ExpectSymbol("[");
  const double lo = ts.ExpectNumber();
  ts.ExpectSymbol(",");
  const double hi = ts.ExpectNumber();
  ts.ExpectSymbol("]");
  return {lo, hi};
}

// Joins the remaining tokens of a line, so "piecewise-constant" (lexed as
// three tokens) comes back as one word.
std::string RestOfLine(TokenStream& ts) {
  std::string out;
  while (!ts.AtEnd()) out += ts.Take().text;
  return out;
}

}  // namespace

ModelSpec ModelSpec::Load(std::string_view text) {
  ModelSpec m;
  Section section = Section::kHeader;
  std::optional<double> horizon;
  std::optional<double> step;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;

    TokenStream ts(Tokenize(line, line_no));
    if (ts.AtEnd()) continue;

    if (ts.Peek().kind == TokenKind::kIdent && ts.IsSymbol(":", 1) &&
        ts.Peek(2).kind == TokenKind::kEnd) {
      if (auto s = SectionFromName(ts.Peek().text)) {
        section = *s;
        continue;
      }
      ts.Fail("unknown section");
    }

    switch (section) {
      case Section::kHeader: {
        const Token key = ts.Peek();
        const std::string word = ts.ExpectIdent();
        if (word == "model") {
          m.name_ = ts.ExpectIdent();
        } else if (word == "horizon") {
          horizon = ts.ExpectNumber();
        } else if (word == "step") {
          step = ts.ExpectNumber();
        } else if (word == "control_points") {
          const double n = ts.ExpectNumber();
          if (n < 1 || n != std::floor(n)) ts.Fail("control_points must be a positive integer");
          m.control_points_ = static_cast<std::size_t>(n);
        } else {
          ts.Fail("unknown header key '" + word + "'", key);
        }
        break;
      }
      case Section::kInputs: {
        ModelInput in;
        in.name = ts.ExpectIdent();
        if (!ts.AcceptIdent("in")) ts.Fail("expected 'in [lo, hi]'");
        const Token range_at = ts.Peek();
        std::tie(in.lo, in.hi) = ParseRange(ts);
        if (in.lo > in.hi) ts.Fail("empty input range", range_at);
        if (!ts.AtEnd()) {
          const Token at = ts.Peek();
          const std::string word = RestOfLine(ts);
          auto kind = ParseInterpolation(word);
          if (!kind) ts.Fail("unknown interpolation '" + word + "'", at);
          in.interpolation = *kind;
        }
        m.inputs_.push_back(std::move(in));
        break;
      }
      case Section::kStates: {
        StateVariable s;
        s.name = ts.ExpectIdent();
        ts.ExpectSymbol("=");
        s.initial = ts.ExpectNumber();
        m.states_.push_back(std::move(s));
        break;
      }
      case Section::kUpdate: {
        RuleAssignment r;
        r.line = line_no;
        r.target = ts.ExpectIdent();
        ts.ExpectSymbol("=");
        r.rule = Expr::Parse(ts);
        m.updates_.push_back(std::move(r));
        break;
      }
      case Section::kOutputs: {
        ModelOutput o;
        o.line = line_no;
        o.name = ts.ExpectIdent();
        ts.ExpectSymbol("=");
        o.rule = Expr::Parse(ts);
        if (ts.AcceptIdent("in")) o.range = ParseRange(ts);
        m.outputs_.push_back(std::move(o));
        break;
      }
    }
    if (!ts.AtEnd()) ts.Fail("unexpected trailing input");
  }

  if (!horizon) throw ParseError("model is missing 'horizon'", 1, 1);
  if (!step) throw ParseError("model is missing 'step'", 1, 1);
  try {
    m.domain_ = TimeDomain(*horizon, *step);
  } catch (const Error& e) {
    throw ParseError(e.what(), 1, 1);
  }
  if (m.inputs_.empty()) throw ParseError("model declares no inputs", line_no, 1);
  if (m.outputs_.empty()) throw ParseError("model declares no outputs", line_no, 1);
  m.Compile();
  return m;
}

void ModelSpec::Compile() {
  slot_names_.clear();
  std::map<std::string, std::uint32_t> slot_of;
  auto declare = [&](const std::string& name, std::size_t line) {
    if (name == "t" || name == "dt" || name == "prev" || name == "in") {
      throw ParseError("'" + name + "' is reserved", line, 1);
    }
    if (slot_of.count(name) != 0) throw ParseError("duplicate name '" + name + "'", line, 1);
    slot_of[name] = static_cast<std::uint32_t>(slot_names_.size());
    slot_names_.push_back(name);
  };

  for (const auto& in : inputs_) declare(in.name, 0);
  state_begin_ = slot_names_.size();
  for (const auto& s : states_) declare(s.name, 0);
  std::map<std::string, std::size_t> rule_of;  // target -> index into combined rules
  for (std::size_t i = 0; i < updates_.size(); ++i) {
    const auto& u = updates_[i];
    auto it = slot_of.find(u.target);
    if (it == slot_of.end()) {
      declare(u.target, u.line);
    } else if (it->second < state_begin_) {
      throw ParseError("cannot assign input '" + u.target + "'", u.line, 1);
    }
    if (rule_of.count(u.target) != 0) {
      throw ParseError("'" + u.target + "' is assigned twice", u.line, 1);
    }
    rule_of[u.target] = i;
  }
  output_begin_ = slot_names_.size();
  for (std::size_t i = 0; i < outputs_.size(); ++i) {
    declare(outputs_[i].name, outputs_[i].line);
    rule_of[outputs_[i].name] = updates_.size() + i;
  }

  initial_previous_.assign(slot_names_.size(), 0.0);
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (!std::isfinite(states_[i].initial)) {
      throw ParseError("state '" + states_[i].name + "' has a non-finite initial value", 0, 0);
    }
    initial_previous_[state_begin_ + i] = states_[i].initial;
  }

  const std::size_t rule_count = updates_.size() + outputs_.size();
  auto rule_expr = [&](std::size_t r) -> Expr& {
    return r < updates_.size() ? updates_[r].rule : outputs_[r - updates_.size()].rule;
  };
  auto rule_target = [&](std::size_t r) -> const std::string& {
    return r < updates_.size() ? updates_[r].target : outputs_[r - updates_.size()].name;
  };

  rule_slots_.resize(rule_count);
  std::vector<std::vector<std::size_t>> deps(rule_count);
  for (std::size_t r = 0; r < rule_count; ++r) {
    Expr& e = rule_expr(r);
    e.Bind([&](const std::string& name) {
      auto it = slot_of.find(name);
      if (it == slot_of.end()) throw UndeclaredNameError(name);
      return it->second;
    });
    rule_slots_[r] = slot_of.at(rule_target(r));
    for (const auto& name : e.SameStepNames()) {
      auto it = rule_of.find(name);
      if (it != rule_of.end()) deps[r].push_back(it->second);
    }
  }

  // Kahn's algorithm, always taking the lowest-index ready rule so the order
  // follows the document wherever dependencies allow.
  order_.clear();
  std::vector<bool> done(rule_count, false);
  for (std::size_t placed = 0; placed < rule_count; ++placed) {
    std::size_t pick = rule_count;
    for (std::size_t r = 0; r < rule_count && pick == rule_count; ++r) {
      if (done[r]) continue;
      bool ready = true;
      for (std::size_t d : deps[r]) ready = ready && done[d];
      if (ready) pick = r;
    }
    if (pick == rule_count) {
      // Walk dependencies from any pending rule until a name repeats.
      std::size_t cur = 0;
      while (done[cur]) ++cur;
      std::vector<std::size_t> path;
      std::vector<int> seen(rule_count, -1);
      while (seen[cur] < 0) {
        seen[cur] = static_cast<int>(path.size());
        path.push_back(cur);
        for (std::size_t d : deps[cur]) {
          if (!done[d]) {
            cur = d;
            break;
          }
        }
      }
      std::string cycle;
      for (std::size_t i = static_cast<std::size_t>(seen[cur]); i < path.size(); ++i) {
        cycle += rule_target(path[i]) + " -> ";
      }
      cycle += rule_target(cur);
      throw CycleError(cycle);
    }
    done[pick] = true;
    order_.push_back(pick);
  }
}

InputProfile ModelSpec::Profile(std::optional<std::size_t> control_points) const {
  std::vector<InputSpec> specs;
  specs.reserve(inputs_.size());
  for (const auto& in : inputs_) specs.push_back({in.name, in.interpolation, in.lo, in.hi});
  return InputProfile(std::move(specs), control_points.value_or(control_points_));
}

ModelSpec ModelSpec::WithHorizon(double end) const {
  ModelSpec copy = *this;
  copy.domain_ = TimeDomain(end, domain_.step());
  return copy;
}

std::string ModelSpec::ToText() const {
  std::ostringstream out;
  out << "model " << name_ << "\n";
  out << "horizon " << FormatNumber(domain_.end()) << "\n";
  out << "step " << FormatNumber(domain_.step()) << "\n";
  out << "control_points " << control_points_ << "\n";
  out << "inputs:\n";
  for (const auto& in : inputs_) {
    out << "  " << in.name << " in [" << FormatNumber(in.lo) << ", "
        << FormatNumber(in.hi) << "] " << ToString(in.interpolation) << "\n";
  }
  if (!states_.empty()) {
    out << "states:\n";
    for (const auto& s : states_) out << "  " << s.name << " = " << FormatNumber(s.initial) << "\n";
  }
  if (!updates_.empty()) {
    out << "update:\n";
    for (const auto& u : updates_) out << "  " << u.target << " = " << u.rule.ToString() << "\n";
  }
  out << "outputs:\n";
  for (const auto& o : outputs_) {
    out << "  " << o.name << " = " << o.rule.ToString();
    if (o.range) {
      out << " in [" << FormatNumber(o.range->first) << ", " << FormatNumber(o.range->second)
          << "]";
    }
    out << "\n";
  }
  return out.str();
}

const Signal* SimulationTrace::Find(std::string_view name) const {
  if (const Signal* s = inputs.Find(name)) return s;
  if (const Signal* s = outputs.Find(name)) return s;
  return states.Find(name);
}

SimulationTrace Simulate(const ModelSpec& model, const SignalBundle& inputs) {
  const TimeDomain& domain = model.domain_;
  const std::size_t samples = domain.samples();
  const std::size_t input_count = model.inputs_.size();

  std::vector<const Signal*> input_signals(input_count);
  for (std::size_t i = 0; i < input_count; ++i) {
    const Signal* s = inputs.Find(model.inputs_[i].name);
    if (s == nullptr) {
      throw CoverageError("no signal for model input '" + model.inputs_[i].name + "'");
    }
    if (!(s->domain() == domain)) {
      throw CoverageError("input '" + model.inputs_[i].name +
                          "' is not sampled on the model time domain");
    }
    input_signals[i] = s;
  }

  const std::size_t slots = model.slot_names_.size();
  std::vector<double> previous = model.initial_previous_;
  std::vector<double> current(slots, 0.0);
  std::vector<std::vector<double>> state_series(model.states_.size(),
                                                std::vector<double>(samples));
  std::vector<std::vector<double>> output_series(model.outputs_.size(),
                                                 std::vector<double>(samples));
  const std::size_t update_count = model.updates_.size();

  for (std::size_t k = 0; k < samples; ++k) {
    current = previous;
    for (std::size_t i = 0; i < input_count; ++i) current[i] = (*input_signals[i])[k];
    const EvalContext ctx{current, previous, domain.time(k), domain.step()};
    for (std::size_t r : model.order_) {
      const bool is_update = r < update_count;
      const Expr& e = is_update ? model.updates_[r].rule : model.outputs_[r - update_count].rule;
      const std::string& target =
          is_update ? model.updates_[r].target : model.outputs_[r - update_count].name;
      double v;
      try {
        v = e.Evaluate(ctx);
      } catch (const DivisionByZero&) {
        throw SimulationError("division by a near-zero denominator", target, k);
      }
      if (!std::isfinite(v)) throw SimulationError("non-finite value", target, k);
      current[model.rule_slots_[r]] = v;
    }
    for (std::size_t s = 0; s < model.states_.size(); ++s) {
      state_series[s][k] = current[model.state_begin_ + s];
    }
    for (std::size_t o = 0; o < model.outputs_.size(); ++o) {
      output_series[o][k] = current[model.output_begin_ + o];
    }
    std::swap(previous, current);
  }

  SimulationTrace trace{SignalBundle(domain), SignalBundle(domain), SignalBundle(domain)};
  for (std::size_t i = 0; i < input_count; ++i) {
    trace.inputs.Add(model.inputs_[i].name, *input_signals[i]);
  }
  for (std::size_t o = 0; o < model.outputs_.size(); ++o) {
    trace.outputs.Add(model.outputs_[o].name, Signal(domain, std::move(output_series[o])));
  }
  for (std::size_t s = 0; s < model.states_.size(); ++s) {
    trace.states.Add(model.states_[s].name, Signal(domain, std::move(state_series[s])));
  }
  return trace;
}

}  // namespace envassume
