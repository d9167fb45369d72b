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

#include "envassume/assumption.hpp"
#include "envassume/errors.hpp"
#include "envassume/gp.hpp"
#include "envassume/rng.hpp"

namespace envassume {
namespace {

InputProfile TwoInputs(std::size_t n, Interpolation kind = Interpolation::kPiecewiseConstant) {
  return InputProfile({{"u1", kind, -100, 100}, {"u2", kind, -100, 100}}, n);
}

constexpr const char* kExample = "u1[1] - u2[1] - 20 <= 0 or (u1[1] < 0 and u2[2] - 2.5 = 0)";

TEST(AssumptionTest, EvaluatesExampleIndividual) {
  const auto profile = TwoInputs(2);
  const auto a = AssumptionTree::Parse(kExample, profile);
  EXPECT_TRUE(Evaluate(a, ControlPointAssignment(2, 2, {0, -1, 0, 2.5})));
  EXPECT_FALSE(Evaluate(a, ControlPointAssignment(2, 2, {30, 1, 0, 0})));
  // Right disjunct alone: 40 - 0 - 20 > 0 but u1[1] < 0 fails, so use u1[1] = -1, u2[1] = -30.
  EXPECT_TRUE(Evaluate(a, ControlPointAssignment(2, 2, {-1, 0, -30, 2.5})));
}

TEST(AssumptionTest, GuardedDivisionAndEqualityTolerance) {
  const auto profile = TwoInputs(1);
  EXPECT_FALSE(Evaluate(AssumptionTree::Parse("3 / 0 > 0", profile),
                        ControlPointAssignment(2, 1, {0, 0})));
  EXPECT_FALSE(Evaluate(AssumptionTree::Parse("1 / u1[1] < 5", profile),
                        ControlPointAssignment(2, 1, {0, 0})));
  const auto eq = AssumptionTree::Parse("u1[1] - 2.5 = 0", profile);
  EXPECT_TRUE(Evaluate(eq, ControlPointAssignment(2, 1, {2.5 + 5e-7, 0})));
  EXPECT_FALSE(Evaluate(eq, ControlPointAssignment(2, 1, {2.5 + 2e-6, 0})));
}

TEST(AssumptionTest, CountsConnectives) {
  const auto profile = TwoInputs(2);
  const auto s = CountStats(AssumptionTree::Parse(kExample, profile));
  EXPECT_EQ(s.disjunctions, 1u);
  EXPECT_EQ(s.conjunctions, 1u);
  const auto single = CountStats(AssumptionTree::Parse("u1[1] <= 3", profile));
  EXPECT_EQ(single.disjunctions, 0u);
  EXPECT_EQ(single.conjunctions, 0u);
  EXPECT_EQ(single.depth, 3u);
}

TEST(AssumptionTest, TermsAreNormalizedToTheLessSide) {
  const auto profile = TwoInputs(1);
  const auto s = CountStats(AssumptionTree::Parse("2 * u1[1] * u2[1] + u1[1] >= 4", profile));
  // -(2 u1 u2 + u1 - 4) <= 0
  ASSERT_EQ(s.terms.size(), 3u);
  double u1 = 0.0, u1u2 = 0.0, constant = 0.0;
  for (const Term& t : s.terms) {
    if (t.monomial.empty()) constant = t.coefficient;
    if (t.monomial == Monomial{{0, 1}}) u1 = t.coefficient;
    if (t.monomial == Monomial{{0, 1}, {1, 1}}) u1u2 = t.coefficient;
  }
  EXPECT_DOUBLE_EQ(u1, -1.0);
  EXPECT_DOUBLE_EQ(u1u2, -2.0);
  EXPECT_DOUBLE_EQ(constant, 4.0);
}

TEST(AssumptionTest, LimitsRejectTooManyConnectives) {
  const auto profile = TwoInputs(2);
  TreeLimits single_rel;
  single_rel.max_conj = 1;
  single_rel.max_disj = 0;
  single_rel.const_min = -0.1;
  single_rel.const_max = 0.1;
  EXPECT_TRUE(AssumptionTree::Parse("u1[1] <= 0.1 and u2[2] > 0", profile).IsValid(profile, single_rel));
  EXPECT_FALSE(AssumptionTree::Parse(kExample, profile).IsValid(profile, single_rel));
  EXPECT_THROW(AssumptionTree::Parse("u1[1] + u2[2] <= 0", profile), Error);
  EXPECT_THROW(AssumptionTree::Parse("(u1[1] < 0 or u2[1] < 0) and u1[2] < 1", profile), Error);
  EXPECT_THROW(AssumptionTree::Parse("u3[1] <= 0", profile), UndeclaredNameError);
  EXPECT_THROW(AssumptionTree::Parse("u1[3] <= 0", profile), ParseError);
}

TEST(TranslationTest, WorkedExampleWithThreePoints) {
  const auto profile = TwoInputs(3);
  const TimeDomain domain(10.0, 1.0);
  const auto s = ToSignalAssumption(AssumptionTree::Parse(kExample, profile), profile, domain);
  ASSERT_EQ(s.constraints.size(), 2u);
  ASSERT_EQ(s.constraints[0].size(), 1u);
  ASSERT_EQ(s.constraints[1].size(), 2u);
  const SignalClause& first = s.constraints[0][0];
  EXPECT_EQ(first.from, 0.0);
  EXPECT_EQ(first.to, 5.0);
  EXPECT_FALSE(first.closed);
  EXPECT_EQ(first.rel, RelOp::kLessEq);
  EXPECT_EQ(s.constraints[1][0].from, 0.0);
  EXPECT_EQ(s.constraints[1][0].to, 5.0);
  EXPECT_EQ(s.constraints[1][1].from, 5.0);
  EXPECT_EQ(s.constraints[1][1].to, 10.0);
  EXPECT_EQ(s.constraints[1][1].rel, RelOp::kEqual);
  EXPECT_EQ(s.ToString(profile),
            "forall t in [0, 5): u1(t) - u2(t) - 20 <= 0 or "
            "(forall t in [0, 5): u1(t) < 0 and forall t in [5, 10): u2(t) - 2.5 = 0)");
}

TEST(TranslationTest, SinglePointAndConstantRel) {
  const auto profile = TwoInputs(1);
  const TimeDomain domain(4.0, 0.5);
  const auto s = ToSignalAssumption(AssumptionTree::Parse("u1[1] <= 3", profile), profile, domain);
  ASSERT_EQ(s.constraints.size(), 1u);
  EXPECT_EQ(s.constraints[0][0].from, 0.0);
  EXPECT_EQ(s.constraints[0][0].to, 4.0);
  EXPECT_TRUE(s.constraints[0][0].closed);
  const auto c = ToSignalAssumption(AssumptionTree::Parse("2 - 3 <= 0", profile), profile, domain);
  EXPECT_TRUE(c.constraints[0][0].time_independent);
}

TEST(RoundTripTest, TreeAndSignalForms) {
  const auto profile = TwoInputs(3);
  const TimeDomain domain(10.0, 1.0);
  for (const char* text :
       {kExample, "u1[2] * u2[2] + 3 > 0", "u1[3] >= -1 or u2[1] < 4 and u1[1] - -2 <= 0"}) {
    const auto a = AssumptionTree::Parse(text, profile);
    EXPECT_EQ(AssumptionTree::Parse(a.ToString(profile), profile), a) << text;
    const auto s = ToSignalAssumption(a, profile, domain);
    EXPECT_EQ(SignalAssumption::Parse(s.ToString(profile), profile), s) << text;
  }
  EXPECT_EQ(AssumptionTree::True().ToString(profile), "0 <= 0");
}

// Independent oracle: satisfaction checked sample by sample on the
// interpolated signals, each sample's position found from the control-point
// spacing.
TEST(TranslationProperty, MatchesAssignmentSemantics) {
  GpConfig config;
  config.limits.const_min = -2.0;
  config.limits.const_max = 2.0;
  Rng rng(2024);
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const InputProfile profile({{"u1", Interpolation::kPiecewiseConstant, -2, 2},
                                {"u2", Interpolation::kPiecewiseConstant, -1, 3}},
                               n);
    const TimeDomain domain(6.0, 0.5);
    for (int trial = 0; trial < 300; ++trial) {
      const auto a = Grow(config, profile, rng);
      ControlPointAssignment x(2, n);
      for (double& v : x.mutable_values()) v = rng.Uniform(-2.0, 2.0);
      const auto s = ToSignalAssumption(a, profile, domain);
      const auto bundle = Interpolate(x, profile, domain);
      EXPECT_EQ(Evaluate(a, x), Satisfies(s, bundle, profile))
          << a.ToString(profile) << " n=" << n;
      ++checked;
    }
  }
  EXPECT_GE(checked, 1000u);
}

}  // namespace
}  // namespace envassume
