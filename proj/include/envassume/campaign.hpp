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

#ifndef ENVASSUME_CAMPAIGN_HPP
#define ENVASSUME_CAMPAIGN_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "envassume/config.hpp"
#include "envassume/loop.hpp"
#include "envassume/model.hpp"
#include "envassume/requirement.hpp"

namespace envassume {

// One requirement-profile combination.
struct CampaignEntry {
  std::string name;
  ModelSpec model;
  Requirement requirement;
  std::optional<std::size_t> control_points;
};

struct Campaign {
  std::vector<CampaignEntry> entries;
  std::vector<Learner> learners{Learner::kGp, Learner::kDt, Learner::kRs};
  RunConfig config;  // Nbr_Runs runs per entry and learner
};

struct CampaignRun {
  std::string entry;
  Learner learner = Learner::kGp;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  RunResult result;
};

struct CampaignSummary {
  std::string entry;
  Learner learner = Learner::kGp;
  std::size_t runs = 0;
  std::size_t sound = 0;
  double sound_rate = 0.0;
  double inf_v_median = 0.0;
  double inf_v_mean = 0.0;
  std::size_t inf_v_min = 0;
  std::size_t inf_v_max = 0;
};

// Run r of every entry and learner uses seed DeriveSeed(config.seed, r), so
// learners are compared on the same seeds. Runs execute concurrently on
// `config.threads` workers; each run is single-threaded internally.
std::vector<CampaignRun> RunCampaign(const Campaign& campaign);

// Per entry and learner, in first-appearance order. Depends only on `runs`.
std::vector<CampaignSummary> Summarize(const std::vector<CampaignRun>& runs);

// Columns: entry, learner, run, seed, sanity, sound, verdict, inf_v,
// iterations, fn, wall_seconds, assumption.
void WriteRunsCsv(std::ostream& out, const std::vector<CampaignRun>& runs);
// Columns: entry, learner, runs, sound, sound_rate, inf_v_median, inf_v_mean,
// inf_v_min, inf_v_max.
void WriteSummaryCsv(std::ostream& out, const std::vector<CampaignSummary>& summary);
// Pairwise rank-sum tests of INF_V over all entries: GP against every other
// learner. Columns: learner_a, learner_b, median_a, median_b, u, z, p_value.
void WriteComparisonCsv(std::ostream& out, const std::vector<CampaignRun>& runs);

// Campaign file: a run configuration (see ParseConfig) plus
//   Learners = GP, DT, RS
//   Entry = name; model-file; requirement-file[; control-points]
//   Entry = library:<planted-model>[; control-points]
// Relative paths resolve against `base_dir`.
Campaign ParseCampaign(std::string_view text, const std::filesystem::path& base_dir);

}  // namespace envassume

#endif  // ENVASSUME_CAMPAIGN_HPP
