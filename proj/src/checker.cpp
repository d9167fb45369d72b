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

#include "envassume/checker.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "envassume/errors.hpp"
#include "envassume/parallel.hpp"
#include "envassume/rng.hpp"
#include "envassume/testgen.hpp"

namespace envassume {

namespace {

constexpr std::size_t kBatch = 1024;
constexpr double kPerturbationScale = 0.1;  // of each input range
constexpr std::size_t kRejectionFactor = 20;

using Clock = std::chrono::steady_clock;

class Evaluator {
 public:
  Evaluator(const ModelSpec& model, const Requirement& req, const InputProfile& profile)
      : model_(model), req_(req), profile_(profile),
        bounded_(req.Horizon() > model.domain().end() * (1.0 + 1e-9)) {}

  bool bounded() const { return bounded_; }

  double operator()(const ControlPointAssignment& x) const {
    try {
      return RobustnessOf(model_, req_, profile_, x, bounded_);
    } catch (const SimulationError&) {
      // A run the model cannot complete counts as a violation.
      return -1.0;
    }
  }

 private:
  const ModelSpec& model_;
  const Requirement& req_;
  const InputProfile& profile_;
  bool bounded_;
};

// Robustness of every candidate, in parallel; index of the first violation.
std::optional<std::size_t> FirstViolation(const std::vector<ControlPointAssignment>& xs,
                                          const Evaluator& eval, unsigned threads,
                                          std::vector<double>& rob) {
  rob.assign(xs.size(), 0.0);
  ParallelFor(xs.size(), threads, [&](std::size_t i) { rob[i] = eval(xs[i]); });
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (rob[i] < 0.0) return i;
  }
  return std::nullopt;
}

bool Admits(const AssumptionTree* a, const ControlPointAssignment& x, const EvalTolerances& tol) {
  return a == nullptr || Evaluate(*a, x, tol);
}

void MarkViolation(CheckVerdict& v, ControlPointAssignment x, double rob) {
  v.kind = VerdictKind::kViolation;
  v.counterexample = std::move(x);
  v.counterexample_robustness = rob;
}

// Grid point `step` of an input range; the last point is exactly hi.
double GridValue(const InputSpec& in, std::size_t step, std::size_t resolution) {
  if (step + 1 == resolution) return in.hi;
  const double w = static_cast<double>(step) / static_cast<double>(resolution - 1);
  return in.lo + w * (in.hi - in.lo);
}

// Moves every value to its nearest grid point, so falsification only reports
// counterexamples the grid sweep could also reach.
void SnapToGrid(ControlPointAssignment& x, const InputProfile& profile, std::size_t resolution) {
  auto values = x.mutable_values();
  const std::size_t n = profile.control_points();
  for (std::size_t d = 0; d < values.size(); ++d) {
    const InputSpec& in = profile.inputs()[d / n];
    if (in.hi <= in.lo) continue;
    const double scaled = (values[d] - in.lo) / (in.hi - in.lo) * static_cast<double>(resolution - 1);
    const auto step = static_cast<std::size_t>(
        std::clamp(std::round(scaled), 0.0, static_cast<double>(resolution - 1)));
    values[d] = GridValue(in, step, resolution);
  }
}

std::optional<std::size_t> CellCount(std::size_t resolution, std::size_t dims, std::size_t cap) {
  std::size_t cells = 1;
  for (std::size_t d = 0; d < dims; ++d) {
    if (cells > cap / resolution) return std::nullopt;
    cells *= resolution;
  }
  return cells;
}

}  // namespace

void CheckerConfig::Validate() const {
  if (resolution < 2) throw Error("grid resolution must be >= 2");
  if (max_cells == 0 || falsification_samples == 0) throw Error("checker budgets must be >= 1");
}

std::string_view ToString(VerdictKind k) {
  switch (k) {
    case VerdictKind::kValid:
      return "valid";
    case VerdictKind::kValidBounded:
      return "valid-bounded";
    case VerdictKind::kViolation:
      return "violation";
    case VerdictKind::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string_view ToString(SanityResult r) {
  switch (r) {
    case SanityResult::kProved:
      return "proved";
    case SanityResult::kRefuted:
      return "refuted";
    case SanityResult::kMixed:
      return "mixed";
  }
  return "?";
}

CheckVerdict Check(const ModelSpec& model, const Requirement& req,
                   const AssumptionTree* assumption, const InputProfile& profile,
                   const CheckerConfig& config) {
  config.Validate();
  if (assumption != nullptr) assumption->Validate(profile);
  const auto start = Clock::now();
  auto out_of_time = [&] {
    if (config.time_budget_seconds <= 0.0) return false;
    const std::chrono::duration<double> elapsed = Clock::now() - start;
    return elapsed.count() > config.time_budget_seconds;
  };

  const Evaluator eval(model, req, profile);
  const EvalTolerances& tol = config.tolerances;
  CheckVerdict v;
  std::vector<double> rob;

  // Phase 1: uniform samples inside A, then Gaussian steps around the least
  // robust admitted sample. Samples are snapped to grid points.
  Rng rng(config.seed);
  const std::size_t uniform_quota = (config.falsification_samples + 1) / 2;
  std::vector<ControlPointAssignment> batch;
  for (std::size_t tries = 0;
       batch.size() < uniform_quota && tries < kRejectionFactor * uniform_quota; ++tries) {
    auto x = UniformAssignment(profile, rng);
    SnapToGrid(x, profile, config.resolution);
    if (Admits(assumption, x, tol)) batch.push_back(std::move(x));
  }
  v.falsification_samples += batch.size();
  v.simulations += batch.size();
  if (auto hit = FirstViolation(batch, eval, config.threads, rob)) {
    MarkViolation(v, batch[*hit], rob[*hit]);
    return v;
  }
  if (!batch.empty()) {
    std::size_t centre_idx = static_cast<std::size_t>(
        std::min_element(rob.begin(), rob.end()) - rob.begin());
    ControlPointAssignment centre = batch[centre_idx];
    double centre_rob = rob[centre_idx];
    const std::size_t local_quota = config.falsification_samples - uniform_quota;
    std::size_t done = 0;
    while (done < local_quota && !out_of_time()) {
      const std::size_t size = std::min<std::size_t>(kBatch, local_quota - done);
      std::vector<ControlPointAssignment> local;
      for (std::size_t tries = 0; local.size() < size && tries < kRejectionFactor * size; ++tries) {
        ControlPointAssignment x = centre;
        auto values = x.mutable_values();
        for (std::size_t s = 0; s < profile.signal_count(); ++s) {
          const InputSpec& in = profile.inputs()[s];
          const double sigma = kPerturbationScale * (in.hi - in.lo);
          for (std::size_t p = 0; p < profile.control_points(); ++p) {
            double& val = values[s * profile.control_points() + p];
            val = std::clamp(rng.Normal(val, sigma), in.lo, in.hi);
          }
        }
        SnapToGrid(x, profile, config.resolution);
        if (Admits(assumption, x, tol)) local.push_back(std::move(x));
      }
      if (local.empty()) break;
      done += local.size();
      v.falsification_samples += local.size();
      v.simulations += local.size();
      if (auto hit = FirstViolation(local, eval, config.threads, rob)) {
        MarkViolation(v, local[*hit], rob[*hit]);
        return v;
      }
      const auto m = std::min_element(rob.begin(), rob.end());
      if (*m < centre_rob) {
        centre_rob = *m;
        centre = local[static_cast<std::size_t>(m - rob.begin())];
      }
    }
  }

  // Phase 2: the full grid, in cell-index order.
  const auto cells = CellCount(config.resolution, profile.dimension(), config.max_cells);
  if (!cells) {
    v.kind = VerdictKind::kInconclusive;
    v.reason = "budget";
    return v;
  }
  v.grid_cells = *cells;
  const std::size_t dims = profile.dimension();
  const std::size_t n = profile.control_points();
  auto cell_assignment = [&](std::size_t cell) {
    ControlPointAssignment x(profile.signal_count(), n);
    auto values = x.mutable_values();
    for (std::size_t d = 0; d < dims; ++d) {
      const std::size_t step = cell % config.resolution;
      cell /= config.resolution;
      values[d] = GridValue(profile.inputs()[d / n], step, config.resolution);
    }
    return x;
  };
  for (std::size_t first = 0; first < *cells; first += kBatch) {
    if (out_of_time()) {
      v.kind = VerdictKind::kInconclusive;
      v.reason = "timeout";
      return v;
    }
    const std::size_t last = std::min(*cells, first + kBatch);
    std::vector<ControlPointAssignment> chunk;
    for (std::size_t c = first; c < last; ++c) {
      auto x = cell_assignment(c);
      if (Admits(assumption, x, tol)) chunk.push_back(std::move(x));
    }
    v.grid_cells_satisfying += chunk.size();
    v.simulations += chunk.size();
    if (auto hit = FirstViolation(chunk, eval, config.threads, rob)) {
      MarkViolation(v, chunk[*hit], rob[*hit]);
      return v;
    }
  }
  v.kind = eval.bounded() ? VerdictKind::kValidBounded : VerdictKind::kValid;
  if (eval.bounded()) v.k_max = model.domain().steps();
  v.vacuous = v.grid_cells_satisfying == 0;
  return v;
}

SanityResult SanityCheck(const ModelSpec& model, const Requirement& req,
                         const InputProfile& profile, const CheckerConfig& config) {
  if (Check(model, req, nullptr, profile, config).Sound()) return SanityResult::kProved;
  if (Check(model, req.Negate(), nullptr, profile, config).Sound()) return SanityResult::kRefuted;
  return SanityResult::kMixed;
}

std::string ToJson(const CheckVerdict& v, const InputProfile& profile) {
  nlohmann::json j;
  j["kind"] = std::string(ToString(v.kind));
  if (v.kind == VerdictKind::kValidBounded) j["k_max"] = v.k_max;
  if (v.kind == VerdictKind::kInconclusive) j["reason"] = v.reason;
  j["vacuous"] = v.vacuous;
  if (v.counterexample) {
    nlohmann::json cex;
    for (std::size_t s = 0; s < profile.signal_count(); ++s) {
      nlohmann::json values = nlohmann::json::array();
      for (std::size_t p = 1; p <= profile.control_points(); ++p) {
        values.push_back(v.counterexample->at(s, p));
      }
      cex[profile.inputs()[s].name] = values;
    }
    j["counterexample"] = cex;
    j["counterexample_robustness"] = v.counterexample_robustness;
  }
  j["budget"] = {{"simulations", v.simulations},
                 {"falsification_samples", v.falsification_samples},
                 {"grid_cells", v.grid_cells},
                 {"grid_cells_satisfying", v.grid_cells_satisfying}};
  return j.dump(2);
}

}  // namespace envassume
