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

#include "envassume/gp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <ostream>

#include "envassume/errors.hpp"
#include "envassume/lexer.hpp"
#include "envassume/parallel.hpp"

namespace envassume {

namespace {

constexpr int kCrossoverAttempts = 20;
constexpr RelOp kRelOps[] = {RelOp::kLess, RelOp::kLessEq, RelOp::kGreater,
                             RelOp::kGreaterEq, RelOp::kEqual};

std::size_t SaturatingSub(std::size_t a, std::size_t b) { return a > b ? a - b : 0; }

class Grower {
 public:
  Grower(const GpConfig& config, const InputProfile& profile, Rng& rng, std::size_t conj_left,
         std::size_t disj_left)
      : config_(config), profile_(profile), rng_(rng), conj_left_(conj_left),
        disj_left_(disj_left) {}

  std::vector<Node> Root(std::size_t depth_left) {
    const bool can_or = CanOr(depth_left);
    const bool can_and = CanAnd(depth_left);
    const std::size_t labels = 5 + (can_or ? 1 : 0) + (can_and ? 1 : 0);
    std::size_t pick = rng_.Index(labels);
    if (can_or && pick-- == 0) return OrNode(depth_left);
    if (can_and && pick-- == 0) return AndNode(depth_left);
    return Rel(depth_left, kRelOps[pick]);
  }

  std::vector<Node> OrNode(std::size_t depth_left) {
    --disj_left_;
    Node head;
    head.kind = NodeKind::kOr;
    return Join(head, OrSlot(depth_left - 1), [&] { return OrSlot(depth_left - 1); });
  }

  std::vector<Node> AndNode(std::size_t depth_left) {
    --conj_left_;
    Node head;
    head.kind = NodeKind::kAnd;
    return Join(head, AndSlot(depth_left - 1), [&] { return AndSlot(depth_left - 1); });
  }

  std::vector<Node> Rel(std::size_t depth_left, std::optional<RelOp> op = std::nullopt) {
    Node head;
    head.kind = NodeKind::kRel;
    head.rel = op ? *op : kRelOps[rng_.Index(5)];
    const auto position = static_cast<std::uint32_t>(1 + rng_.Index(profile_.control_points()));
    auto exp = Exp(depth_left - 1, position);
    head.size = static_cast<std::uint32_t>(exp.size() + 1);
    exp.insert(exp.begin(), head);
    return exp;
  }

  std::vector<Node> Exp(std::size_t depth_left, std::uint32_t position) {
    const std::size_t ops = depth_left >= 2 ? (config_.allow_division ? 4 : 3) : 0;
    const std::size_t pick = rng_.Index(ops + 2);
    Node n;
    if (pick < ops) {
      static constexpr NodeKind kOps[] = {NodeKind::kAdd, NodeKind::kSub, NodeKind::kMul,
                                          NodeKind::kDiv};
      n.kind = kOps[pick];
      return Join(n, Exp(depth_left - 1, position),
                  [&] { return Exp(depth_left - 1, position); });
    }
    if (pick == ops) {
      n.kind = NodeKind::kConst;
      n.value = rng_.Uniform(config_.limits.const_min, config_.limits.const_max);
    } else {
      n.kind = NodeKind::kCp;
      n.signal = static_cast<std::uint32_t>(rng_.Index(profile_.signal_count()));
      n.position = position;
    }
    return {n};
  }

 private:
  bool CanOr(std::size_t depth_left) const { return depth_left >= 3 && disj_left_ > 0; }
  bool CanAnd(std::size_t depth_left) const { return depth_left >= 3 && conj_left_ > 0; }

  std::vector<Node> OrSlot(std::size_t depth_left) {
    if (CanOr(depth_left) && rng_.Index(2) == 0) return OrNode(depth_left);
    return AndSlot(depth_left);
  }

  std::vector<Node> AndSlot(std::size_t depth_left) {
    if (CanAnd(depth_left) && rng_.Index(2) == 0) return AndNode(depth_left);
    return Rel(depth_left);
  }

  // The second child is grown only after the first, so shared budgets are
  // consumed in prefix order.
  template <typename SecondFn>
  static std::vector<Node> Join(Node head, std::vector<Node> first, SecondFn&& second_fn) {
    std::vector<Node> second = second_fn();
    head.size = static_cast<std::uint32_t>(1 + first.size() + second.size());
    std::vector<Node> out;
    out.reserve(head.size);
    out.push_back(head);
    out.insert(out.end(), first.begin(), first.end());
    out.insert(out.end(), second.begin(), second.end());
    return out;
  }

  const GpConfig& config_;
  const InputProfile& profile_;
  Rng& rng_;
  std::size_t conj_left_;
  std::size_t disj_left_;
};

// Fitter with the index as the final tie-break.
bool Ahead(const Population& pop, std::size_t a, std::size_t b) {
  const auto& ia = pop.individuals[a];
  const auto& ib = pop.individuals[b];
  if (Fitter(ia, ib)) return true;
  if (Fitter(ib, ia)) return false;
  return a < b;
}

GenerationStats Summarize(const Population& pop) {
  GenerationStats s;
  s.generation = pop.generation;
  if (pop.individuals.empty()) return s;
  std::size_t best = 0;
  for (std::size_t i = 1; i < pop.individuals.size(); ++i) {
    if (Ahead(pop, i, best)) best = i;
  }
  const auto& b = pop.individuals[best].fitness;
  s.best_fn = b.fn;
  s.best_v_sound = b.v_sound;
  s.best_informative = b.informative;
  for (const auto& ind : pop.individuals) {
    s.mean_fn += ind.fitness.fn;
    s.mean_v_sound += ind.fitness.v_sound;
    s.mean_informative += ind.fitness.informative;
  }
  const double n = static_cast<double>(pop.individuals.size());
  s.mean_fn /= n;
  s.mean_v_sound /= n;
  s.mean_informative /= n;
  return s;
}

// Tracks BestAssum across generations. Strictly fitter individuals replace
// the incumbent, so ties keep the earlier generation and lower index.
class BestTracker {
 public:
  void Offer(const Population& pop, LearnResult& result) {
    for (std::size_t i = 0; i < pop.individuals.size(); ++i) {
      const Individual& ind = pop.individuals[i];
      if (!have_ || Fitter(ind, best_)) {
        best_ = ind;
        have_ = true;
        result.best = ind.tree;
        result.best_fitness = ind.fitness;
        result.best_generation = pop.generation;
      }
    }
  }

 private:
  Individual best_;
  bool have_ = false;
};

Population Breed(const Population& pop, const GpConfig& config, const InputProfile& profile,
                 Rng& rng) {
  Population off;
  off.generation = pop.generation + 1;
  off.individuals.reserve(config.pop_size);
  while (off.individuals.size() < config.pop_size) {
    std::vector<Individual> kids;
    if (rng.Bernoulli(config.cross_rate)) {
      const auto [a, b] = SelectParents(pop, config, rng);
      auto [c1, c2] = Crossover(pop.individuals[a].tree, pop.individuals[b].tree, config,
                                profile, rng);
      kids.push_back(Individual{std::move(c1), {}, false});
      kids.push_back(Individual{std::move(c2), {}, false});
    } else {
      // A plain copy keeps its fitness: the suite does not change within a run.
      kids.push_back(pop.individuals[rng.Index(pop.individuals.size())]);
    }
    for (auto& kid : kids) {
      if (off.individuals.size() >= config.pop_size) break;
      if (rng.Bernoulli(config.mut_rate)) {
        kid.tree = Mutate(kid.tree, config, profile, rng);
        kid.evaluated = false;
      }
      off.individuals.push_back(std::move(kid));
    }
  }
  return off;
}

void CheckSuite(const TestSuite& ts) {
  if (ts.usable() == 0) throw Error("test suite has no usable cases");
}

}  // namespace

std::string_view ToString(Selection s) {
  switch (s) {
    case Selection::kRoulette:
      return "RWS";
    case Selection::kTournament:
      return "TRS";
    case Selection::kRank:
      return "RANK";
  }
  return "?";
}

std::optional<Selection> ParseSelection(std::string_view text) {
  std::string upper(text);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "RWS") return Selection::kRoulette;
  if (upper == "TRS") return Selection::kTournament;
  if (upper == "RANK" || upper == "RS") return Selection::kRank;
  return std::nullopt;
}

void GpConfig::Validate() const {
  auto rate = [](double r, const char* name) {
    if (!(r >= 0.0 && r <= 1.0)) throw Error(std::string(name) + " must be in [0, 1]");
  };
  rate(init_ratio, "Init_Ratio");
  rate(mut_rate, "Mut_Rate");
  rate(cross_rate, "Cross_Rate");
  if (pop_size == 0) throw Error("Pop_Size must be >= 1");
  if (tournament_size == 0) throw Error("T_Size must be >= 1");
  if (limits.max_depth < 2) throw Error("Max_Depth must be >= 2");
  if (!(limits.const_min <= limits.const_max)) throw Error("Const_Min must be <= Const_Max");
}

FitnessRecord FitnessFromCounts(std::size_t tp, std::size_t tn, std::size_t total) {
  FitnessRecord r;
  r.tp = tp;
  r.tn = tn;
  r.total = total;
  if (tp + tn > 0) r.v_sound = static_cast<double>(tp) / static_cast<double>(tp + tn);
  if (total > 0) r.informative = static_cast<double>(tp + tn) / static_cast<double>(total);
  r.fn = r.v_sound + std::floor(r.v_sound) * r.informative;
  return r;
}

FitnessRecord Fitness(const AssumptionTree& a, const TestSuite& ts, const EvalTolerances& tol) {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t total = 0;
  for (const auto& tc : ts.cases) {
    if (!tc.ok()) continue;
    ++total;
    if (!Evaluate(a, tc.assignment, tol)) continue;
    if (tc.verdict == Verdict::kPass) {
      ++tp;
    } else {
      ++tn;
    }
  }
  return FitnessFromCounts(tp, tn, total);
}

bool Fitter(const Individual& a, const Individual& b) {
  if (a.fitness.fn != b.fitness.fn) return a.fitness.fn > b.fitness.fn;
  return a.tree.size() < b.tree.size();
}

AssumptionTree Grow(const GpConfig& config, const InputProfile& profile, Rng& rng) {
  Grower g(config, profile, rng, config.limits.max_conj, config.limits.max_disj);
  return AssumptionTree(g.Root(config.limits.max_depth));
}

Population Initialize(const Population* prior, const GpConfig& config,
                      const InputProfile& profile, Rng& rng) {
  Population pop;
  if (prior != nullptr && !prior->individuals.empty()) {
    std::vector<std::size_t> order(prior->individuals.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return Ahead(*prior, a, b); });
    const auto wanted = static_cast<std::size_t>(
        std::llround(config.init_ratio * static_cast<double>(config.pop_size)));
    const std::size_t copied = std::min({wanted, order.size(), config.pop_size});
    for (std::size_t i = 0; i < copied; ++i) {
      pop.individuals.push_back(Individual{prior->individuals[order[i]].tree, {}, false});
    }
  }
  while (pop.individuals.size() < config.pop_size) {
    pop.individuals.push_back(Individual{Grow(config, profile, rng), {}, false});
  }
  return pop;
}

std::size_t SelectOne(const Population& pop, const GpConfig& config, Rng& rng) {
  const std::size_t n = pop.individuals.size();
  switch (config.selection) {
    case Selection::kTournament: {
      // Entrants are drawn without replacement, so T_Size = Pop_Size always
      // returns the population best.
      const std::size_t k = std::min(config.tournament_size, n);
      std::vector<std::size_t> idx(n);
      std::iota(idx.begin(), idx.end(), 0);
      std::size_t best = n;
      for (std::size_t i = 0; i < k; ++i) {
        std::swap(idx[i], idx[i + rng.Index(n - i)]);
        if (best == n || Ahead(pop, idx[i], best)) best = idx[i];
      }
      return best;
    }
    case Selection::kRoulette: {
      double total = 0.0;
      for (const auto& ind : pop.individuals) total += ind.fitness.fn;
      if (!(total > 0.0)) return rng.Index(n);
      const double r = rng.Uniform01() * total;
      double acc = 0.0;
      std::size_t last_positive = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const double f = pop.individuals[i].fitness.fn;
        if (f <= 0.0) continue;
        acc += f;
        last_positive = i;
        if (r < acc) return i;
      }
      return last_positive;
    }
    case Selection::kRank: {
      // Distinct ranks 1 (worst) .. n (best); probability proportional to rank.
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return Ahead(pop, b, a); });
      const std::uint64_t total = static_cast<std::uint64_t>(n) * (n + 1) / 2;
      std::uint64_t r = rng.Index(static_cast<std::size_t>(total));
      for (std::size_t rank = 1; rank <= n; ++rank) {
        if (r < rank) return order[rank - 1];
        r -= rank;
      }
      return order.back();
    }
  }
  return 0;
}

std::pair<std::size_t, std::size_t> SelectParents(const Population& pop, const GpConfig& config,
                                                  Rng& rng) {
  const std::size_t a = SelectOne(pop, config, rng);
  const std::size_t b = SelectOne(pop, config, rng);
  return {a, b};
}

std::pair<AssumptionTree, AssumptionTree> Crossover(const AssumptionTree& p1,
                                                    const AssumptionTree& p2,
                                                    const GpConfig& config,
                                                    const InputProfile& profile, Rng& rng) {
  // Identical parents swap homologous subtrees, which leaves them unchanged.
  if (p1 == p2) return {p1, p2};
  for (int attempt = 0; attempt < kCrossoverAttempts; ++attempt) {
    const std::size_t i = rng.Index(p1.size());
    const NodeType type = TypeOf(p1.node(i).kind);
    std::vector<std::size_t> candidates;
    for (std::size_t j = 0; j < p2.size(); ++j) {
      if (TypeOf(p2.node(j).kind) == type) candidates.push_back(j);
    }
    if (candidates.empty()) continue;
    const std::size_t j = candidates[rng.Index(candidates.size())];
    if (type == NodeType::kExp) {
      auto positions = p1.PositionsIn(i);
      const auto other = p2.PositionsIn(j);
      positions.insert(positions.end(), other.begin(), other.end());
      std::sort(positions.begin(), positions.end());
      positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
      if (positions.size() > 1) continue;
    }
    AssumptionTree c1 = p1.WithSubtree(i, p2.Subtree(j));
    AssumptionTree c2 = p2.WithSubtree(j, p1.Subtree(i));
    if (c1.IsValid(profile, config.limits) && c2.IsValid(profile, config.limits)) {
      return {std::move(c1), std::move(c2)};
    }
  }
  return {p1, p2};
}

AssumptionTree Mutate(const AssumptionTree& a, const GpConfig& config,
                      const InputProfile& profile, Rng& rng) {
  const std::size_t i = rng.Index(a.size());
  const Node& target = a.node(i);
  const std::size_t depth_left = config.limits.max_depth + 1 - a.DepthOf(i);

  std::size_t conj_inside = 0;
  std::size_t disj_inside = 0;
  for (const Node& n : a.Subtree(i)) {
    conj_inside += n.kind == NodeKind::kAnd ? 1 : 0;
    disj_inside += n.kind == NodeKind::kOr ? 1 : 0;
  }
  const TreeStats stats = CountStats(a);
  Grower g(config, profile, rng,
           SaturatingSub(config.limits.max_conj, stats.conjunctions - conj_inside),
           SaturatingSub(config.limits.max_disj, stats.disjunctions - disj_inside));

  std::vector<Node> replacement;
  switch (TypeOf(target.kind)) {
    case NodeType::kOr:
      replacement = g.OrNode(depth_left);
      break;
    case NodeType::kAnd:
      replacement = g.AndNode(depth_left);
      break;
    case NodeType::kRel:
      replacement = g.Rel(depth_left);
      break;
    case NodeType::kExp: {
      // Keep the position of cps that stay in the enclosing rel.
      std::size_t rel = i;
      while (a.node(rel).kind != NodeKind::kRel) rel = *a.Parent(rel);
      std::optional<std::uint32_t> position;
      for (std::size_t k = rel + 1; k < rel + a.node(rel).size; ++k) {
        if (k >= i && k < i + target.size) continue;
        if (a.node(k).kind == NodeKind::kCp) position = a.node(k).position;
      }
      if (!position) {
        position = static_cast<std::uint32_t>(1 + rng.Index(profile.control_points()));
      }
      replacement = g.Exp(depth_left, *position);
      break;
    }
  }
  return a.WithSubtree(i, replacement);
}

void EvaluatePopulation(Population& pop, const TestSuite& ts, const GpConfig& config) {
  ParallelFor(pop.individuals.size(), config.threads, [&](std::size_t i) {
    Individual& ind = pop.individuals[i];
    if (ind.evaluated) return;
    ind.fitness = Fitness(ind.tree, ts, config.tolerances);
    ind.evaluated = true;
  });
}

LearnResult GpGenerate(const TestSuite& ts, const GpConfig& config, const Population* prior) {
  config.Validate();
  CheckSuite(ts);
  Rng rng(config.seed);
  LearnResult result;
  BestTracker best;
  Population pop = Initialize(prior, config, ts.profile, rng);
  EvaluatePopulation(pop, ts, config);
  best.Offer(pop, result);
  result.telemetry.push_back(Summarize(pop));
  for (std::size_t g = 0; g < config.gen_size; ++g) {
    pop = Breed(pop, config, ts.profile, rng);
    EvaluatePopulation(pop, ts, config);
    best.Offer(pop, result);
    result.telemetry.push_back(Summarize(pop));
  }
  result.final_population = std::move(pop);
  return result;
}

LearnResult RsGenerate(const TestSuite& ts, const GpConfig& config, const Population* prior) {
  config.Validate();
  CheckSuite(ts);
  Rng rng(config.seed);
  LearnResult result;
  BestTracker best;
  Population pop = Initialize(prior, config, ts.profile, rng);
  EvaluatePopulation(pop, ts, config);
  best.Offer(pop, result);
  result.telemetry.push_back(Summarize(pop));
  for (std::size_t g = 0; g < config.gen_size; ++g) {
    pop = Initialize(nullptr, config, ts.profile, rng);
    pop.generation = g + 1;
    EvaluatePopulation(pop, ts, config);
    best.Offer(pop, result);
    result.telemetry.push_back(Summarize(pop));
  }
  result.final_population = std::move(pop);
  return result;
}

void WriteTelemetryCsv(std::ostream& out, const std::vector<GenerationStats>& telemetry) {
  out << "generation,best_fn,mean_fn,best_v_sound,best_informative,mean_v_sound,"
         "mean_informative\n";
  for (const auto& s : telemetry) {
    out << s.generation << ',' << FormatNumber(s.best_fn) << ',' << FormatNumber(s.mean_fn)
        << ',' << FormatNumber(s.best_v_sound) << ',' << FormatNumber(s.best_informative) << ','
        << FormatNumber(s.mean_v_sound) << ',' << FormatNumber(s.mean_informative) << '\n';
  }
}

}  // namespace envassume
