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

#ifndef ENVASSUME_GP_HPP
#define ENVASSUME_GP_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "envassume/assumption.hpp"
#include "envassume/rng.hpp"
#include "envassume/testgen.hpp"

namespace envassume {

enum class Selection { kRoulette, kTournament, kRank };

std::string_view ToString(Selection s);
// Accepts RWS, TRS, RANK (case-insensitive).
std::optional<Selection> ParseSelection(std::string_view text);

struct GpConfig {
  std::size_t pop_size = 500;
  std::size_t gen_size = 100;
  TreeLimits limits;
  double init_ratio = 0.5;
  Selection selection = Selection::kTournament;
  std::size_t tournament_size = 7;
  double mut_rate = 0.1;
  double cross_rate = 0.9;
  bool allow_division = false;
  EvalTolerances tolerances;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  // Throws Error when a rate is outside [0, 1], a size is 0,
  // Const_Min > Const_Max or Max_Depth < 2.
  void Validate() const;
};

struct FitnessRecord {
  std::size_t tp = 0;     // passing cases that satisfy the assumption
  std::size_t tn = 0;     // failing cases that satisfy the assumption
  std::size_t total = 0;  // usable cases in the suite
  double v_sound = 0.0;
  double informative = 0.0;
  double fn = 0.0;

  friend bool operator==(const FitnessRecord&, const FitnessRecord&) = default;
};

FitnessRecord FitnessFromCounts(std::size_t tp, std::size_t tn, std::size_t total);
FitnessRecord Fitness(const AssumptionTree& a, const TestSuite& ts,
                      const EvalTolerances& tol = {});

struct Individual {
  AssumptionTree tree;
  FitnessRecord fitness;
  bool evaluated = false;
};

struct Population {
  std::vector<Individual> individuals;
  std::size_t generation = 0;
};

// Ordering used everywhere a "best" individual is picked: higher fn, then
// fewer nodes. Callers break remaining ties by earlier generation and lower
// index.
bool Fitter(const Individual& a, const Individual& b);

// Random tree by the grow method. The root is drawn uniformly among the
// feasible labels (or, and, and the five relational operators); inner slots
// pick a production of their grammar rule uniformly.
AssumptionTree Grow(const GpConfig& config, const InputProfile& profile, Rng& rng);

// Unevaluated population: round(Init_Ratio * Pop_Size) of the fittest prior
// individuals (when a prior is given), the rest grown.
Population Initialize(const Population* prior, const GpConfig& config,
                      const InputProfile& profile, Rng& rng);

std::size_t SelectOne(const Population& pop, const GpConfig& config, Rng& rng);
std::pair<std::size_t, std::size_t> SelectParents(const Population& pop, const GpConfig& config,
                                                  Rng& rng);

// One-point crossover between subtrees of the same node type. Returns copies
// of the parents when no legal pair is found within 20 attempts.
std::pair<AssumptionTree, AssumptionTree> Crossover(const AssumptionTree& p1,
                                                    const AssumptionTree& p2,
                                                    const GpConfig& config,
                                                    const InputProfile& profile, Rng& rng);

// Point mutation: regrows a random subtree with a root of the same type.
AssumptionTree Mutate(const AssumptionTree& a, const GpConfig& config,
                      const InputProfile& profile, Rng& rng);

// Fitness of every unevaluated individual, in parallel.
void EvaluatePopulation(Population& pop, const TestSuite& ts, const GpConfig& config);

struct GenerationStats {
  std::size_t generation = 0;
  double best_fn = 0.0;
  double mean_fn = 0.0;
  double best_v_sound = 0.0;
  double best_informative = 0.0;
  double mean_v_sound = 0.0;
  double mean_informative = 0.0;
};

struct LearnResult {
  AssumptionTree best;
  FitnessRecord best_fitness;
  std::size_t best_generation = 0;
  Population final_population;
  std::vector<GenerationStats> telemetry;
};

// Genetic programming over `ts`; the best individual over all generations.
LearnResult GpGenerate(const TestSuite& ts, const GpConfig& config, const Population* prior);

// Random search: the initial population plus Gen_Size freshly grown ones.
LearnResult RsGenerate(const TestSuite& ts, const GpConfig& config, const Population* prior);

void WriteTelemetryCsv(std::ostream& out, const std::vector<GenerationStats>& telemetry);

}  // namespace envassume

#endif  // ENVASSUME_GP_HPP
