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

#include <gtest/gtest.h>

#include "envassume/errors.hpp"
#include "envassume/model.hpp"
#include "envassume/rng.hpp"

namespace envassume {
namespace {

SignalBundle Constant(const TimeDomain& d, const std::string& name, double v) {
  SignalBundle b(d);
  b.Add(name, Signal(d, std::vector<double>(d.samples(), v)));
  return b;
}

TEST(ModelTest, IntegratorRecurrence) {
  const auto m = ModelSpec::Load(R"(
model integrator
horizon 1
step 0.25
inputs:
  u in [-1, 1]
states:
  acc = 0
update:
  acc = prev(acc) + dt * u
outputs:
  y = acc
)");
  const auto trace = Simulate(m, Constant(m.domain(), "u", 1.0));
  const std::vector<double> expected{0.25, 0.5, 0.75, 1.0, 1.25};
  const auto y = trace.outputs.Get("y").samples();
  ASSERT_EQ(y.size(), expected.size());
  for (std::size_t k = 0; k < y.size(); ++k) EXPECT_DOUBLE_EQ(y[k], expected[k]);
}

TEST(ModelTest, PassThroughAndSaturation) {
  const auto m = ModelSpec::Load(
      "horizon 2\nstep 0.5\ninputs:\nu in [-10, 10]\noutputs:\ny = u\nz = sat(u, -1, 1)\n");
  SignalBundle in(m.domain());
  in.Add("u", Signal(m.domain(), {5, -3, 0.5, 5, 5}));
  const auto trace = Simulate(m, in);
  EXPECT_EQ(trace.outputs.Get("y"), in.Get("u"));
  const auto z = Simulate(m, Constant(m.domain(), "u", 5.0)).outputs.Get("z");
  for (double v : z.samples()) EXPECT_EQ(v, 1.0);
}

TEST(ModelTest, LoadErrors) {
  EXPECT_NO_THROW(ModelSpec::Load("horizon 1\nstep 1\ninputs:\nu in [0,1]\noutputs:\ny = u\n"));
  EXPECT_THROW(ModelSpec::Load("horizon 1\nstep 1\ninputs:\nu in [0,1]\noutputs:\ny = z\n"),
               UndeclaredNameError);
  try {
    ModelSpec::Load(
        "horizon 1\nstep 1\ninputs:\nu in [0,1]\nupdate:\na = b\nb = a\noutputs:\ny = a\n");
    FAIL();
  } catch (const CycleError& e) {
    EXPECT_NE(e.cycle().find("a"), std::string::npos);
    EXPECT_NE(e.cycle().find("b"), std::string::npos);
  }
  try {
    ModelSpec::Load("horizon 1\nstep 1\ninputs:\nu in [0,1]\noutputs:\ny = u +\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 6u);
  }
}

TEST(ModelTest, DivisionByZeroNamesRuleAndStep) {
  const auto m = ModelSpec::Load(
      "horizon 2\nstep 1\ninputs:\nu in [0,1]\noutputs:\ny = 1 / (u - 0.5)\n");
  SignalBundle in(m.domain());
  in.Add("u", Signal(m.domain(), {0.0, 0.5, 1.0}));
  try {
    Simulate(m, in);
    FAIL();
  } catch (const SimulationError& e) {
    EXPECT_EQ(e.rule(), "y");
    EXPECT_EQ(e.step(), 1u);
  }
}

TEST(ModelTest, DeterministicAndNoLookahead) {
  const std::string text = R"(
horizon 5
step 0.1
inputs:
  u in [-1, 1]
states:
  x = 0.3
update:
  e = u - prev(x)
  x = prev(x) + 0.5 * e * dt + 0.1 * min(e, 0.2)
outputs:
  y = max(abs(x), 0.05) * if(u, 1, -1)
)";
  const auto m = ModelSpec::Load(text);
  const auto shorter = m.WithHorizon(2.0);
  Rng rng(3);
  std::vector<double> v(m.domain().samples());
  for (double& x : v) x = rng.Uniform(-1, 1);
  SignalBundle in(m.domain());
  in.Add("u", Signal(m.domain(), v));
  const auto a = Simulate(m, in);
  const auto b = Simulate(m, in);
  EXPECT_EQ(a.outputs, b.outputs);
  EXPECT_EQ(a.states, b.states);

  SignalBundle head(shorter.domain());
  head.Add("u", Signal(shorter.domain(), std::vector<double>(v.begin(), v.begin() + 21)));
  const auto c = Simulate(shorter, head);
  for (std::size_t k = 0; k < 21; ++k) {
    EXPECT_EQ(c.outputs.Get("y")[k], a.outputs.Get("y")[k]);
  }
}

TEST(ModelTest, TextRoundTrip) {
  const auto m = ModelSpec::Load(R"(
model pid
horizon 1
step 0.01
control_points 3
inputs:
  r in [0, 1] linear
states:
  i = 0
  y = 0
update:
  e = r - prev(y)
  i = prev(i) + e * dt
  y = prev(y) + dt * (2 * e + 0.5 * i)
outputs:
  out = y in [-2, 2]
)");
  const auto again = ModelSpec::Load(m.ToText());
  EXPECT_EQ(again.ToText(), m.ToText());
  EXPECT_EQ(again.default_control_points(), 3u);
  EXPECT_EQ(again.inputs()[0].interpolation, Interpolation::kLinear);
}

}  // namespace
}  // namespace envassume
