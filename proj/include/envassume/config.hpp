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

#ifndef ENVASSUME_CONFIG_HPP
#define ENVASSUME_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "envassume/checker.hpp"
#include "envassume/decision_tree.hpp"
#include "envassume/gp.hpp"

namespace envassume {

enum class Learner { kGp, kDt, kRs };
enum class StopCriterion { kMc, kTimeout };

std::string_view ToString(Learner l);
std::optional<Learner> ParseLearner(std::string_view text);
std::string_view ToString(StopCriterion s);

struct RunConfig {
  Learner sba = Learner::kGp;
  std::optional<double> simulation_time;  // ST: overrides the model horizon
  std::size_t ts_size = 300;
  StopCriterion stop = StopCriterion::kMc;
  double timeout_seconds = 3600.0;
  std::size_t max_iterations = 100;
  std::size_t nbr_runs = 1;
  std::optional<std::size_t> control_points;  // overrides the model default
  bool accumulate = true;
  GpConfig gp;
  DtConfig dt;
  CheckerConfig checker;
  std::uint64_t seed = 0;
  std::uint64_t inf_v_seed = 0x1f5eedULL;
  unsigned threads = 0;

  // Throws Error on an inconsistent configuration.
  void Validate() const;
};

// Key-value text, one `Key = value` per line, `#` comments. Keys follow the
// parameter names of the tool's documentation (SBA, TS_Size, Timeout,
// Stop_Crt, Nbr_Runs, Max_Conj, Max_Disj, Const_Min, Const_Max, Max_Depth,
// Init_Ratio, Pop_Size, Gen_Size, Sel_Crt, T_Size, Mut_Rate, Cross_Rate) plus
// artifact keys listed in docs/formats.md. Unset keys keep the values in
// `base`. Throws ParseError on unknown keys or malformed values.
RunConfig ParseConfig(std::string_view text, const RunConfig& base = {});

// Canonical text; ParseConfig(ToText(c)) reproduces c.
std::string ToText(const RunConfig& config);

// Accepts plain seconds or a number with an s, m or h suffix.
double ParseDuration(std::string_view text);

}  // namespace envassume

#endif  // ENVASSUME_CONFIG_HPP
