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

#ifndef ENVASSUME_LOOP_HPP
#define ENVASSUME_LOOP_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "envassume/assumption.hpp"
#include "envassume/checker.hpp"
#include "envassume/config.hpp"
#include "envassume/gp.hpp"
#include "envassume/model.hpp"
#include "envassume/requirement.hpp"

namespace envassume {

struct IterationRecord {
  std::size_t iteration = 0;  // 1-based
  AssumptionTree assumption;
  FitnessRecord fitness;
  VerdictKind verdict = VerdictKind::kInconclusive;
  bool sound = false;
  std::size_t suite_size = 0;
  double seconds = 0.0;
};

struct RunResult {
  InputProfile profile;
  TimeDomain domain;
  SanityResult sanity = SanityResult::kMixed;
  AssumptionTree assumption;
  bool sound = false;
  CheckVerdict verdict;
  FitnessRecord fitness;
  std::size_t inf_v = 0;
  std::size_t iterations = 0;
  double wall_seconds = 0.0;
  std::vector<IterationRecord> history;
};

// Learns an assumption for (model, req): repeats test generation, assumption
// learning and checking until the stop criterion holds. A requirement that
// the sanity check proves or refutes needs no loop: the result is `true`
// (sound) or `false` (unsound) with zero iterations.
//
// MC stops at the first sound verdict, or after Max_Iterations. Timeout runs
// until Max_Iterations or the wall-clock budget and returns the last sound
// assumption, or the last one when none was sound. Apart from the wall-clock
// cutoff the result depends only on the seed.
RunResult RunLoop(const ModelSpec& model, const Requirement& req, const RunConfig& config);

// Number of `samples` uniform assignments over the profile that satisfy a.
std::size_t InformativeValue(const AssumptionTree& a, const InputProfile& profile,
                             std::uint64_t seed, std::size_t samples = 100,
                             const EvalTolerances& tol = {});

std::string ToJson(const RunResult& result);

}  // namespace envassume

#endif  // ENVASSUME_LOOP_HPP
