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

#include "envassume/loop.hpp"

#include <chrono>
#include <json.hpp>

#include "envassume/decision_tree.hpp"
#include "envassume/rng.hpp"
#include "envassume/testgen.hpp"

namespace envassume {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kCheckerStream = 0xc4ec'0000'0000ULL;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Learned {
  AssumptionTree assumption;
  FitnessRecord fitness;
  std::optional<Population> population;
};

Learned Learn(const TestSuite& ts, const RunConfig& config, std::uint64_t seed,
              const Population* prior) {
  GpConfig gp = config.gp;
  gp.seed = seed;
  gp.threads = config.threads;
  switch (config.sba) {
    case Learner::kGp: {
      LearnResult r = GpGenerate(ts, gp, prior);
      return {std::move(r.best), r.best_fitness, std::move(r.final_population)};
    }
    case Learner::kRs: {
      LearnResult r = RsGenerate(ts, gp, prior);
      return {std::move(r.best), r.best_fitness, std::move(r.final_population)};
    }
    case Learner::kDt: {
      AssumptionTree a = DtGenerate(ts, config.dt);
      FitnessRecord f = Fitness(a, ts, config.gp.tolerances);
      return {std::move(a), f, std::nullopt};
    }
  }
  return {};
}

}  // namespace

std::size_t InformativeValue(const AssumptionTree& a, const InputProfile& profile,
                             std::uint64_t seed, std::size_t samples,
                             const EvalTolerances& tol) {
  Rng rng(seed);
  std::size_t count = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    if (Evaluate(a, UniformAssignment(profile, rng), tol)) ++count;
  }
  return count;
}

RunResult RunLoop(const ModelSpec& model, const Requirement& req, const RunConfig& config) {
  config.Validate();
  const auto start = Clock::now();
  const ModelSpec m = config.simulation_time ? model.WithHorizon(*config.simulation_time) : model;
  req.Validate(m);
  const Requirement r = req.WithDefaultScales(m);

  RunResult result;
  result.profile = m.Profile(config.control_points);
  result.domain = m.domain();
  const InputProfile& profile = result.profile;

  CheckerConfig checker = config.checker;
  checker.threads = config.threads;
  checker.tolerances = config.gp.tolerances;
  checker.seed = DeriveSeed(config.seed, kCheckerStream);

  result.sanity = SanityCheck(m, r, profile, checker);
  if (result.sanity != SanityResult::kMixed) {
    const bool proved = result.sanity == SanityResult::kProved;
    result.assumption = proved ? AssumptionTree::True() : AssumptionTree::False();
    result.verdict = Check(m, r, nullptr, profile, checker);
    result.sound = proved && result.verdict.Sound();
    result.inf_v = InformativeValue(result.assumption, profile, config.inf_v_seed, 100,
                                    config.gp.tolerances);
    result.wall_seconds = SecondsSince(start);
    return result;
  }

  TestSuite suite{profile, {}};
  std::optional<Population> population;
  std::optional<std::size_t> last_sound;
  std::vector<CheckVerdict> verdicts;
  std::vector<FitnessRecord> fitnesses;

  for (std::size_t it = 0; it < config.max_iterations; ++it) {
    const auto iteration_start = Clock::now();
    GenSuiteOptions options;
    options.count = config.ts_size;
    options.seed = DeriveSeed(config.seed, 2 * it);
    options.accumulate = config.accumulate;
    options.threads = config.threads;
    suite = GenSuite(m, r, &suite, profile, options);

    Learned learned = Learn(suite, config, DeriveSeed(config.seed, 2 * it + 1),
                            population ? &*population : nullptr);
    if (learned.population) population = std::move(learned.population);

    checker.seed = DeriveSeed(config.seed, kCheckerStream + it + 1);
    CheckVerdict verdict = Check(m, r, &learned.assumption, profile, checker);

    IterationRecord record;
    record.iteration = it + 1;
    record.assumption = learned.assumption;
    record.fitness = learned.fitness;
    record.verdict = verdict.kind;
    record.sound = verdict.Sound();
    record.suite_size = suite.size();
    record.seconds = SecondsSince(iteration_start);
    if (record.sound) last_sound = result.history.size();
    result.history.push_back(std::move(record));
    verdicts.push_back(std::move(verdict));
    fitnesses.push_back(learned.fitness);

    if (config.stop == StopCriterion::kMc && result.history.back().sound) break;
    if (config.stop == StopCriterion::kTimeout && SecondsSince(start) >= config.timeout_seconds) {
      break;
    }
  }

  result.iterations = result.history.size();
  const std::size_t chosen = last_sound.value_or(result.history.size() - 1);
  result.assumption = result.history[chosen].assumption;
  result.fitness = fitnesses[chosen];
  result.verdict = std::move(verdicts[chosen]);
  result.sound = result.verdict.Sound();
  result.inf_v = InformativeValue(result.assumption, profile, config.inf_v_seed, 100,
                                  config.gp.tolerances);
  result.wall_seconds = SecondsSince(start);
  return result;
}

std::string ToJson(const RunResult& result) {
  using nlohmann::json;
  json j;
  j["sanity"] = std::string(ToString(result.sanity));
  j["assumption"] = json::parse(ToJson(result.assumption, result.profile, result.domain));
  j["sound"] = result.sound;
  j["verdict"] = json::parse(ToJson(result.verdict, result.profile));
  j["fitness"] = {{"tp", result.fitness.tp},
                  {"tn", result.fitness.tn},
                  {"total", result.fitness.total},
                  {"v_sound", result.fitness.v_sound},
                  {"informative", result.fitness.informative},
                  {"fn", result.fitness.fn}};
  j["inf_v"] = result.inf_v;
  j["iterations"] = result.iterations;
  j["wall_seconds"] = result.wall_seconds;
  json history = json::array();
  for (const IterationRecord& h : result.history) {
    history.push_back({{"iteration", h.iteration},
                       {"assumption", h.assumption.ToString(result.profile)},
                       {"fn", h.fitness.fn},
                       {"verdict", std::string(ToString(h.verdict))},
                       {"sound", h.sound},
                       {"suite_size", h.suite_size},
                       {"seconds", h.seconds}});
  }
  j["history"] = std::move(history);
  return j.dump(2);
}

}  // namespace envassume
