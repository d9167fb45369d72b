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
#include "envassume/requirement.hpp"
#include "envassume/rng.hpp"

namespace envassume {
namespace {

SimulationTrace TraceOf(const TimeDomain& d, const std::vector<double>& y) {
  SimulationTrace t;
  t.inputs = SignalBundle(d);
  t.outputs = SignalBundle(d);
  t.states = SignalBundle(d);
  t.outputs.Add("y", Signal(d, y));
  return t;
}

TEST(RequirementTest, ConstantMarginAndClamp) {
  const TimeDomain d(1.0, 0.1);
  const auto req = Requirement::Parse("always[0,1] y <= 0 @ 1");
  EXPECT_DOUBLE_EQ(Robustness(TraceOf(d, std::vector<double>(11, -0.5)), req), 0.5);
  EXPECT_DOUBLE_EQ(Robustness(TraceOf(d, std::vector<double>(11, 2.0)), req), -1.0);
}

TEST(RequirementTest, EventuallyOnRamp) {
  const TimeDomain d(1.0, 0.1);
  std::vector<double> ramp(11);
  for (std::size_t k = 0; k <= 10; ++k) ramp[k] = -1.0 + 0.2 * double(k);
  EXPECT_DOUBLE_EQ(Robustness(TraceOf(d, ramp), Requirement::Parse("eventually[0,1] y >= 0")),
                   1.0);
}

TEST(RequirementTest, VerdictBoundary) {
  EXPECT_EQ(VerdictOf(0.0), Verdict::kPass);
  EXPECT_EQ(VerdictOf(-0.001), Verdict::kFail);
  EXPECT_EQ(VerdictOf(1.0), Verdict::kPass);
}

TEST(RequirementTest, ParseShapesAndErrors) {
  const auto req = Requirement::Parse("always[0,1]: RW_x >= -0.001 and RW_x <= 0.001");
  ASSERT_EQ(req.root()->kind, FormulaKind::kAlways);
  ASSERT_EQ(req.root()->children[0]->kind, FormulaKind::kAnd);
  EXPECT_EQ(req.signal_names(), std::vector<std::string>{"RW_x"});
  EXPECT_THROW(Requirement::Parse("always[1,0] y <= 0"), ParseError);
  EXPECT_THROW(Requirement::Parse("y = 0"), ParseError);
  EXPECT_THROW(Requirement::Parse("y <= 0 @ 0"), ParseError);
  EXPECT_THROW(Requirement::Parse("y <="), ParseError);
  EXPECT_NO_THROW(Requirement::Parse("(y + 1) * 2 <= 3 and (y >= 0 or not y > 5)"));
}

TEST(RequirementTest, PrintParseRoundTrip) {
  for (const char* text :
       {"always[0, 1] (a <= 1 or b > 2) and eventually[0.5, 2] c - a * 2 >= -3 @ 4",
        "not (a < 0 implies b >= 1) implies always[0, 0] a <= b",
        "eventually[0, 1]: always[0, 0.5]: x + y < 2 or x >= 1"}) {
    const auto req = Requirement::Parse(text);
    EXPECT_EQ(Requirement::Parse(req.ToString()), req) << req.ToString();
    EXPECT_EQ(Requirement::Parse(req.Negate().ToString()), req.Negate());
  }
}

TEST(RequirementTest, NegationDualities) {
  EXPECT_EQ(Requirement::Parse("not always[0,1] y <= 0").Negate(),
            Requirement::Parse("always[0,1] y <= 0"));
  EXPECT_EQ(Requirement::Parse("always[0,1] y <= 0").Negate(),
            Requirement::Parse("eventually[0,1] y > 0"));
  EXPECT_EQ(Requirement::Parse("a < 1 and b >= 2").Negate(),
            Requirement::Parse("a >= 1 or b < 2"));
  const auto r = Requirement::Parse("always[0,1] (a < 1 implies eventually[0,0.5] b >= 2)");
  EXPECT_EQ(r.Negate().Negate(), Requirement::Parse(r.Negate().Negate().ToString()));
  EXPECT_EQ(r.Negate().Negate().ToString(),
            Requirement::Parse("always[0,1] (a >= 1 or eventually[0,0.5] b >= 2)").ToString());
}

TEST(RequirementTest, HorizonError) {
  const TimeDomain d(1.0, 0.1);
  const auto req = Requirement::Parse("always[0,2] y <= 0");
  EXPECT_DOUBLE_EQ(req.Horizon(), 2.0);
  EXPECT_THROW(Robustness(TraceOf(d, std::vector<double>(11, 0.0)), req), HorizonError);
  EXPECT_DOUBLE_EQ(BoundedRobustness(TraceOf(d, std::vector<double>(11, -0.25)), req), 0.25);
}

// Sign consistency, antisymmetry and monotonicity over random traces.
TEST(RequirementTest, SemanticProperties) {
  const TimeDomain d(2.0, 0.1);
  const auto req = Requirement::Parse(
      "always[0,1] (y <= 0.5 or eventually[0,1] y < -0.2) and eventually[0,2] y >= -0.9");
  Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> y(d.samples());
    for (double& v : y) v = rng.Uniform(-1.0, 1.0);
    if (trial % 7 == 0) y[rng.Index(y.size())] = 0.5;  // exercise ties
    const auto trace = TraceOf(d, y);
    const double r = Robustness(trace, req);
    EXPECT_GE(r, -1.0);
    EXPECT_LE(r, 1.0);
    EXPECT_EQ(VerdictOf(r) == Verdict::kPass, Satisfied(trace, req));
    const double rn = Robustness(trace, req.Negate());
    if (std::abs(r) < 1.0) EXPECT_DOUBLE_EQ(rn, -r);
  }
  const auto mono = Requirement::Parse("always[0,2] y <= 0.3 or eventually[0,2] y <= -0.5");
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> y(d.samples());
    for (double& v : y) v = rng.Uniform(-1.0, 1.0);
    const double before = Robustness(TraceOf(d, y), mono);
    for (double& v : y) v -= 0.1;  // every atom's margin grows by 0.1
    EXPECT_GE(Robustness(TraceOf(d, y), mono), before);
  }
}

TEST(RequirementTest, DefaultScaleFromOutputRange) {
  const auto m = ModelSpec::Load(
      "horizon 1\nstep 0.5\ninputs:\nu in [0,1]\noutputs:\ny = 4 * u in [0, 4]\n");
  const auto req = Requirement::Parse("always[0,1] y <= 3").WithDefaultScales(m);
  SignalBundle in(m.domain());
  in.Add("u", Signal(m.domain(), {0.5, 0.5, 0.5}));
  EXPECT_DOUBLE_EQ(Robustness(Simulate(m, in), req), 0.25);
  EXPECT_THROW(Requirement::Parse("z <= 3").Validate(m), UndeclaredNameError);
}

}  // namespace
}  // namespace envassume
