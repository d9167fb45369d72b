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

#include "envassume/config.hpp"
#include "envassume/errors.hpp"

namespace envassume {
namespace {

constexpr const char* kDefaultSettings = R"(# default GP settings
SBA = GP
TS_Size = 300
Pop_Size = 500
Gen_Size = 100
Max_Depth = 5
Max_Conj = 3
Max_Disj = 2
Const_Min = -100
Const_Max = 100
Init_Ratio = 50%
Sel_Crt = TRS
T_Size = 7
Mut_Rate = 0.1
Cross_Rate = 0.9
Stop_Crt = Timeout
Timeout = 1h
)";

TEST(ConfigTest, ParsesDefaultSettings) {
  const RunConfig c = ParseConfig(kDefaultSettings);
  EXPECT_EQ(c.sba, Learner::kGp);
  EXPECT_EQ(c.ts_size, 300u);
  EXPECT_EQ(c.gp.pop_size, 500u);
  EXPECT_EQ(c.gp.gen_size, 100u);
  EXPECT_EQ(c.gp.limits.max_depth, 5u);
  EXPECT_EQ(c.gp.limits.max_conj, 3u);
  EXPECT_EQ(c.gp.limits.max_disj, 2u);
  EXPECT_EQ(c.gp.limits.const_min, -100.0);
  EXPECT_EQ(c.gp.limits.const_max, 100.0);
  EXPECT_DOUBLE_EQ(c.gp.init_ratio, 0.5);
  EXPECT_EQ(c.gp.selection, Selection::kTournament);
  EXPECT_EQ(c.gp.tournament_size, 7u);
  EXPECT_DOUBLE_EQ(c.gp.mut_rate, 0.1);
  EXPECT_DOUBLE_EQ(c.gp.cross_rate, 0.9);
  EXPECT_EQ(c.stop, StopCriterion::kTimeout);
  EXPECT_DOUBLE_EQ(c.timeout_seconds, 3600.0);
}

TEST(ConfigTest, UnsetKeysKeepBase) {
  RunConfig base;
  base.seed = 99;
  base.gp.pop_size = 12;
  const RunConfig c = ParseConfig("Gen_Size = 3\n", base);
  EXPECT_EQ(c.seed, 99u);
  EXPECT_EQ(c.gp.pop_size, 12u);
  EXPECT_EQ(c.gp.gen_size, 3u);
}

TEST(ConfigTest, Durations) {
  EXPECT_DOUBLE_EQ(ParseDuration("90"), 90.0);
  EXPECT_DOUBLE_EQ(ParseDuration("30s"), 30.0);
  EXPECT_DOUBLE_EQ(ParseDuration("2m"), 120.0);
  EXPECT_DOUBLE_EQ(ParseDuration("1.5h"), 5400.0);
  EXPECT_THROW(ParseDuration("soon"), Error);
}

TEST(ConfigTest, ErrorsCarryLineNumbers) {
  try {
    ParseConfig("SBA = DT\nPop_Sise = 10\n");
    FAIL() << "unknown key accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(ParseConfig("SBA = SVM\n"), ParseError);
  EXPECT_THROW(ParseConfig("Pop_Size = many\n"), ParseError);
  EXPECT_THROW(ParseConfig("Pop_Size\n"), ParseError);
}

TEST(ConfigTest, TextRoundTrip) {
  RunConfig c = ParseConfig(kDefaultSettings);
  c.sba = Learner::kRs;
  c.simulation_time = 12.5;
  c.control_points = 4;
  c.seed = 1234567;
  c.gp.selection = Selection::kRank;
  c.gp.limits.const_min = -0.001;
  c.gp.limits.const_max = 0.001;
  const RunConfig back = ParseConfig(ToText(c));
  EXPECT_EQ(ToText(back), ToText(c));
  EXPECT_EQ(back.sba, Learner::kRs);
  EXPECT_EQ(back.simulation_time, 12.5);
  EXPECT_EQ(back.control_points, 4u);
  EXPECT_EQ(back.seed, 1234567u);
  EXPECT_EQ(back.gp.limits.const_min, -0.001);
}

TEST(ConfigTest, ValidateRejectsBadValues) {
  EXPECT_THROW(ParseConfig("Mut_Rate = 1.5\n").Validate(), Error);
  EXPECT_THROW(ParseConfig("Const_Min = 5\nConst_Max = 1\n").Validate(), Error);
  EXPECT_NO_THROW(ParseConfig(kDefaultSettings).Validate());
}

}  // namespace
}  // namespace envassume
