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

#ifndef ENVASSUME_CHECKER_HPP
#define ENVASSUME_CHECKER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "envassume/assumption.hpp"
#include "envassume/model.hpp"
#include "envassume/requirement.hpp"

namespace envassume {

// Grid-relative stand-in for a model checker. Valid means no counterexample
// on the enumerated control-point grid, not a proof over the reals.
struct CheckerConfig {
  std::size_t resolution = 11;           // grid points per control point
  std::size_t max_cells = 1'000'000;     // larger grids are Inconclusive
  std::size_t falsification_samples = 200;
  double time_budget_seconds = 0.0;      // 0: unlimited
  std::uint64_t seed = 0;
  unsigned threads = 0;
  EvalTolerances tolerances;

  // Throws Error when resolution < 2 or a budget is 0.
  void Validate() const;
};

enum class VerdictKind { kValid, kValidBounded, kViolation, kInconclusive };

std::string_view ToString(VerdictKind k);

struct CheckVerdict {
  VerdictKind kind = VerdictKind::kInconclusive;
  std::size_t k_max = 0;  // kValidBounded: last step covered by the trace
  std::optional<ControlPointAssignment> counterexample;
  double counterexample_robustness = 0.0;
  std::string reason;    // kInconclusive: "budget" or "timeout"
  bool vacuous = false;  // no grid cell satisfied the assumption
  std::size_t simulations = 0;
  std::size_t falsification_samples = 0;
  std::size_t grid_cells = 0;
  std::size_t grid_cells_satisfying = 0;

  // Valid or ValidBounded, and not vacuous.
  bool Sound() const {
    return (kind == VerdictKind::kValid || kind == VerdictKind::kValidBounded) && !vacuous;
  }
};

// Checks <A> M <req>, or <true> M <req> when `assumption` is null. Phase 1
// samples grid points satisfying A and perturbs the least robust one; phase
// 2 sweeps the full grid in index order. The lowest-index grid violation is
// reported, independent of the thread count.
CheckVerdict Check(const ModelSpec& model, const Requirement& req,
                   const AssumptionTree* assumption, const InputProfile& profile,
                   const CheckerConfig& config);

enum class SanityResult { kProved, kRefuted, kMixed };

std::string_view ToString(SanityResult r);

// Proved if <true> M <req> holds on the grid, refuted if <true> M <not req>
// does, mixed otherwise.
SanityResult SanityCheck(const ModelSpec& model, const Requirement& req,
                         const InputProfile& profile, const CheckerConfig& config);

std::string ToJson(const CheckVerdict& v, const InputProfile& profile);

}  // namespace envassume

#endif  // ENVASSUME_CHECKER_HPP
