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

#ifndef ENVASSUME_MODEL_HPP
#define ENVASSUME_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "envassume/expr.hpp"
#include "envassume/signals.hpp"

namespace envassume {

struct SimulationTrace;
class ModelSpec;
SimulationTrace Simulate(const ModelSpec& model, const SignalBundle& inputs);

struct ModelInput {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  Interpolation interpolation = Interpolation::kPiecewiseConstant;
};

struct StateVariable {
  std::string name;
  double initial = 0.0;
};

// `target = rule`. Targets of update rules are states or intermediates;
// output rules define the model outputs.
struct RuleAssignment {
  std::string target;
  Expr rule;
  std::size_t line = 0;
};

struct ModelOutput {
  std::string name;
  Expr rule;
  // Reachable range, used as the default robustness scale.
  std::optional<std::pair<double, double>> range;
  std::size_t line = 0;
};

// A fixed-step discrete-time component. Every step reads the inputs, runs the
// update rules and then the output rules in dependency order; prev(x) reads
// the value x had at the previous step (the declared initial value for
// states and 0 for anything else at step 0).
class ModelSpec {
 public:
  // Parses a model-spec document. Throws ParseError, UndeclaredNameError or
  // CycleError.
  static ModelSpec Load(std::string_view text);

  const std::string& name() const { return name_; }
  const TimeDomain& domain() const { return domain_; }
  const std::vector<ModelInput>& inputs() const { return inputs_; }
  const std::vector<StateVariable>& states() const { return states_; }
  const std::vector<RuleAssignment>& updates() const { return updates_; }
  const std::vector<ModelOutput>& outputs() const { return outputs_; }
  std::size_t default_control_points() const { return control_points_; }

  // Input profile built from the declared input ranges and interpolations.
  InputProfile Profile(std::optional<std::size_t> control_points = std::nullopt) const;

  // Same model with a different horizon; the step is kept.
  ModelSpec WithHorizon(double end) const;

  // Canonical document text; Load(ToText()) reproduces the model.
  std::string ToText() const;

 private:
  friend SimulationTrace Simulate(const ModelSpec& model, const SignalBundle& inputs);

  void Compile();

  std::string name_ = "model";
  TimeDomain domain_;
  std::size_t control_points_ = 1;
  std::vector<ModelInput> inputs_;
  std::vector<StateVariable> states_;
  std::vector<RuleAssignment> updates_;
  std::vector<ModelOutput> outputs_;

  // Slot layout: inputs, states, intermediates, outputs.
  std::vector<std::string> slot_names_;
  std::vector<double> initial_previous_;
  std::vector<std::size_t> order_;  // updates_ indices, then outputs_ offset by updates_.size()
  std::vector<std::uint32_t> rule_slots_;  // target slot per entry of order_ source
  std::size_t state_begin_ = 0;
  std::size_t output_begin_ = 0;
};

struct SimulationTrace {
  SignalBundle inputs;
  SignalBundle outputs;
  SignalBundle states;

  // Signal by name from inputs, then outputs, then states; nullptr if absent.
  const Signal* Find(std::string_view name) const;
  const TimeDomain& domain() const { return inputs.domain(); }
};

// Runs the model over its time domain. `inputs` must hold every declared
// input on the model's time domain (extra signals are ignored). Throws
// CoverageError for missing inputs and SimulationError for a near-zero
// denominator or a non-finite value.
SimulationTrace Simulate(const ModelSpec& model, const SignalBundle& inputs);

}  // namespace envassume

#endif  // ENVASSUME_MODEL_HPP
