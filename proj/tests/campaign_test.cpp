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

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "envassume/campaign.hpp"
#include "envassume/errors.hpp"
#include "envassume/io.hpp"
#include "envassume/library.hpp"

namespace envassume {
namespace {

CampaignRun FakeRun(const std::string& entry, Learner l, std::size_t run, bool sound,
                    std::size_t inf_v) {
  CampaignRun r;
  r.entry = entry;
  r.learner = l;
  r.run = run;
  r.result.sound = sound;
  r.result.inf_v = inf_v;
  return r;
}

TEST(CampaignTest, SummaryArithmetic) {
  std::vector<CampaignRun> runs;
  for (std::size_t i = 0; i < 100; ++i) runs.push_back(FakeRun("a", Learner::kGp, i, i < 16, i));
  runs.push_back(FakeRun("b", Learner::kDt, 0, true, 7));
  const auto summary = Summarize(runs);
  ASSERT_EQ(summary.size(), 2u);
  EXPECT_EQ(summary[0].entry, "a");
  EXPECT_EQ(summary[0].runs, 100u);
  EXPECT_EQ(summary[0].sound, 16u);
  EXPECT_DOUBLE_EQ(summary[0].sound_rate, 0.16);
  EXPECT_DOUBLE_EQ(summary[0].inf_v_median, 49.5);
  EXPECT_DOUBLE_EQ(summary[0].inf_v_mean, 49.5);
  EXPECT_EQ(summary[0].inf_v_min, 0u);
  EXPECT_EQ(summary[0].inf_v_max, 99u);
  EXPECT_EQ(summary[1].learner, Learner::kDt);
  EXPECT_EQ(Summarize(runs)[0].inf_v_median, summary[0].inf_v_median);
}

TEST(CampaignTest, EmptyCampaign) {
  Campaign c;
  EXPECT_TRUE(RunCampaign(c).empty());
  EXPECT_TRUE(Summarize({}).empty());
  std::ostringstream out;
  WriteSummaryCsv(out, {});
  EXPECT_EQ(out.str(), "entry,learner,runs,sound,sound_rate,inf_v_median,inf_v_mean,inf_v_min,"
                       "inf_v_max\n");
}

TEST(CampaignTest, RunsShareSeedsAcrossLearners) {
  Campaign c;
  const PlantedModel p = *FindPlantedModel("threshold");
  c.entries.push_back({p.name, p.Model(), p.Req(), std::nullopt});
  c.config.nbr_runs = 2;
  c.config.max_iterations = 1;
  c.config.gp.pop_size = 30;
  c.config.gp.gen_size = 3;
  c.config.checker.resolution = 21;
  c.config.threads = 2;
  const auto runs = RunCampaign(c);
  ASSERT_EQ(runs.size(), 6u);
  for (const CampaignRun& r : runs) {
    EXPECT_EQ(r.seed, DeriveSeed(c.config.seed, r.run));
  }
  std::ostringstream csv;
  WriteRunsCsv(csv, runs);
  const std::string text = csv.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 7);
  std::ostringstream comparison;
  WriteComparisonCsv(comparison, runs);
  EXPECT_NE(comparison.str().find("GP,DT"), std::string::npos) << comparison.str();
}

TEST(CampaignTest, ParseCampaignFile) {
  const auto dir = std::filesystem::temp_directory_path() / "envassume_campaign_test";
  const PlantedModel p = *FindPlantedModel("linear");
  WriteTextFile(dir / "m.model", p.model_text);
  WriteTextFile(dir / "r.req", p.requirement_text);
  const Campaign c = ParseCampaign(
      "# demo\nLearners = GP, RS\nNbr_Runs = 3\nEntry = own; m.model; r.req; 2\n"
      "Entry = library:bilinear\n",
      dir);
  ASSERT_EQ(c.entries.size(), 2u);
  EXPECT_EQ(c.entries[0].name, "own");
  EXPECT_EQ(c.entries[0].control_points, 2u);
  EXPECT_EQ(c.entries[1].name, "bilinear");
  EXPECT_FALSE(c.entries[1].control_points);
  EXPECT_EQ(c.learners, (std::vector<Learner>{Learner::kGp, Learner::kRs}));
  EXPECT_EQ(c.config.nbr_runs, 3u);

  EXPECT_THROW(ParseCampaign("Entry = library:nope\n", dir), Error);
  EXPECT_THROW(ParseCampaign("Entry = library:linear\nEntry = library:linear\n", dir), Error);
  try {
    ParseCampaign("Learners = GP\nBogus = 1\n", dir);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace envassume
