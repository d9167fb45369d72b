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

// Acceptance harness: one PASS/FAIL line per criterion. Pass criterion
// numbers as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "envassume/campaign.hpp"
#include "envassume/checker.hpp"
#include "envassume/decision_tree.hpp"
#include "envassume/gp.hpp"
#include "envassume/library.hpp"
#include "envassume/loop.hpp"
#include "envassume/stats.hpp"
#include "envassume/terms.hpp"
#include "envassume/testgen.hpp"

namespace envassume {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string Fmt(const char* format, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

// A rel reading cps of two or more different signals.
bool HasMultiSignalRel(const AssumptionTree& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.node(i).kind != NodeKind::kRel) continue;
    std::set<std::uint32_t> signals;
    for (std::size_t k = i + 1; k < i + a.node(i).size; ++k) {
      if (a.node(k).kind == NodeKind::kCp) signals.insert(a.node(k).signal);
    }
    if (signals.size() >= 2) return true;
  }
  return false;
}

// Every rel is `cp - const` compared with 0, or a constant rel.
bool OnlySingleVariableConditions(const AssumptionTree& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.node(i).kind != NodeKind::kRel) continue;
    std::size_t cps = 0;
    for (std::size_t k = i + 1; k < i + a.node(i).size; ++k) {
      const NodeKind kind = a.node(k).kind;
      if (kind == NodeKind::kCp) ++cps;
      if (kind == NodeKind::kAdd || kind == NodeKind::kMul || kind == NodeKind::kDiv) return false;
    }
    if (cps > 1) return false;
  }
  return true;
}

// Loop settings shared by the planted-model criteria: unit-range inputs, so
// constants are drawn from the input scale.
RunConfig PlantedLoopConfig(std::uint64_t seed) {
  RunConfig c;
  c.seed = seed;
  c.gp.pop_size = 100;
  c.gp.gen_size = 20;
  c.gp.limits.const_min = -1.0;
  c.gp.limits.const_max = 1.0;
  c.checker.resolution = 101;
  c.threads = 1;
  return c;
}

// ---------------------------------------------------------------------------

Outcome FitnessAlgebra() {
  Rng rng(1);
  const InputProfile profile({{"u", Interpolation::kPiecewiseConstant, 0, 1}}, 1);
  const auto a = AssumptionTree::Parse("u[1] <= 0.5", profile);
  double max_diff = 0.0;
  std::size_t mismatches = 0, sound_cases = 0, empty_cases = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t total = 1 + rng.Index(400);
    std::size_t tp = 0, tn = 0;
    switch (trial % 4) {
      case 0:  // v_sound = 1
        tp = 1 + rng.Index(total);
        break;
      case 1:
        if (trial % 8 == 1) break;  // nothing satisfied
        [[fallthrough]];
      default:
        tp = rng.Index(total + 1);
        tn = rng.Index(total - tp + 1);
        break;
    }
    TestSuite ts{profile, {}};
    auto add = [&](double u, bool pass) {
      ts.cases.push_back({ControlPointAssignment(1, 1, {u}), pass ? 1.0 : -1.0,
                          pass ? Verdict::kPass : Verdict::kFail, std::nullopt});
    };
    for (std::size_t i = 0; i < tp; ++i) add(0.25, true);
    for (std::size_t i = 0; i < tn; ++i) add(0.25, false);
    while (ts.size() < total) add(0.75, rng.Bernoulli(0.5));

    // Closed form.
    const double satisfied = static_cast<double>(tp + tn);
    const double v = tp + tn == 0 ? 0.0 : static_cast<double>(tp) / satisfied;
    const double informative = satisfied / static_cast<double>(total);
    const double fn = v + std::floor(v) * informative;
    if (v == 1.0) ++sound_cases;
    if (tp + tn == 0) ++empty_cases;

    const FitnessRecord f = Fitness(a, ts);
    const double d = std::max({std::abs(f.fn - fn), std::abs(f.v_sound - v),
                               std::abs(f.informative - informative)});
    max_diff = std::max(max_diff, d);
    if (d > 4 * std::numeric_limits<double>::epsilon() || f.tp != tp || f.tn != tn) ++mismatches;
  }
  return {mismatches == 0 && sound_cases > 0 && empty_cases > 0,
          Fmt("1000 triples (%g with v_sound=1, %g empty), %g mismatches, max |d| = %g",
              double(sound_cases), double(empty_cases), double(mismatches), max_diff)};
}

Outcome TranslationEquivalence() {
  Rng rng(7);
  std::size_t checked = 0, mismatches = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    const InputProfile profile({{"a", Interpolation::kPiecewiseConstant, -3, 3},
                                {"b", Interpolation::kPiecewiseConstant, 0, 10},
                                {"c", Interpolation::kPiecewiseConstant, -1, 1}},
                               n);
    const TimeDomain domain(8.0, 0.25);
    GpConfig config;
    config.limits.const_min = -3.0;
    config.limits.const_max = 3.0;
    config.allow_division = n % 2 == 0;
    for (int trial = 0; trial < 300; ++trial) {
      const AssumptionTree a = Grow(config, profile, rng);
      ControlPointAssignment x = UniformAssignment(profile, rng);
      // Some values on round numbers so equality and boundary rels are hit.
      if (trial % 3 == 0) {
        for (double& v : x.mutable_values()) v = std::round(v);
      }
      const bool by_points = Evaluate(a, x);
      const bool by_signals =
          Satisfies(ToSignalAssumption(a, profile, domain), Interpolate(x, profile, domain), profile);
      if (by_points != by_signals) ++mismatches;
      ++checked;
    }
  }
  return {checked >= 1000 && mismatches == 0,
          Fmt("%g tree/assignment pairs, %g mismatches", double(checked), double(mismatches))};
}

struct PlantedCase {
  std::string assumption;
  bool sound;
};

std::vector<PlantedCase> CasesFor(const std::string& model) {
  std::vector<PlantedCase> out;
  auto add = [&](bool sound, const std::string& text) { out.push_back({text, sound}); };
  auto num = [](double v) {
    std::ostringstream s;
    s << v;
    return s.str();
  };
  if (model == "threshold") {
    for (int k = 1; k <= 10; ++k) add(true, "u[1] <= " + num(0.05 * k));
    for (int k = 1; k <= 9; ++k) add(false, "u[1] <= " + num(0.5 + 0.05 * k));
    add(false, "u[1] >= 0.3");
  } else if (model == "linear") {
    for (double c : {0.2, 0.4, 0.6, 0.8, 1.0}) add(true, "u1[1] + u2[1] <= " + num(c));
    for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      add(true, "u1[1] <= " + num(a) + " and u2[1] <= " + num(1.0 - a - 1e-9));
    }
    for (double d : {0.05, 0.1, 0.2, 0.4, 0.8}) add(false, "u1[1] + u2[1] <= " + num(1.0 + d));
    for (double a : {0.0, 0.2, 0.4, 0.6, 0.8}) add(false, "u1[1] >= " + num(a));
  } else if (model == "bilinear") {
    for (double c : {0.05, 0.1, 0.15, 0.2, 0.25}) add(true, "u1[1] * u2[1] <= " + num(c));
    for (auto [a, b] : std::vector<std::pair<double, double>>{
             {0.25, 1.0}, {0.3, 0.83}, {0.5, 0.5}, {0.7, 0.35}, {0.9, 0.27}}) {
      add(true, "u1[1] <= " + num(a) + " and u2[1] <= " + num(b));
    }
    for (double d : {0.05, 0.1, 0.2, 0.4, 0.6}) add(false, "u1[1] * u2[1] <= " + num(0.25 + d));
    for (double a : {0.1, 0.3, 0.5, 0.6, 0.7}) {
      add(false, "u1[1] >= " + num(a) + " and u2[1] >= " + num(a));
    }
  } else if (model == "disk") {
    for (double c : {0.1, 0.2, 0.3, 0.4, 0.5}) {
      add(true, "u1[1] * u1[1] + u2[1] * u2[1] <= " + num(c));
    }
    for (double h : {0.1, 0.2, 0.3, 0.4, 0.5}) {
      add(true, "u1[1] <= " + num(h) + " and u1[1] >= " + num(-h) + " and u2[1] <= " + num(h) +
                    " and u2[1] >= " + num(-h));
    }
    for (double d : {0.05, 0.1, 0.2, 0.4, 0.8}) {
      add(false, "u1[1] * u1[1] + u2[1] * u2[1] <= " + num(0.5 + d));
    }
    for (double a : {-0.5, 0.0, 0.3, 0.6, 0.9}) add(false, "u1[1] >= " + num(a));
  } else if (model == "integrator") {
    for (auto [a, b] : std::vector<std::pair<double, double>>{{0.25, 0.9},
                                                              {0.3, 0.7},
                                                              {0.4, 0.3},
                                                              {0.48, 0.0},
                                                              {0.49, -0.5},
                                                              {0.0, 1.0},
                                                              {-0.5, 1.0},
                                                              {0.44, 0.2},
                                                              {0.34, 0.6},
                                                              {0.1, 1.0}}) {
      add(true, "u[1] <= " + num(a) + " and u[2] <= " + num(b));
    }
    for (double a : {0.55, 0.6, 0.7, 0.8, 0.9}) add(false, "u[1] >= " + num(a));
    for (auto [a, b] : std::vector<std::pair<double, double>>{
             {0.5, 0.5}, {0.45, 0.4}, {0.4, 0.8}, {0.42, 0.5}, {0.3, 0.9}}) {
      add(false, "u[1] <= " + num(a) + " and u[2] >= " + num(b));
    }
  }
  return out;
}

// Independent evidence for a construction label: the closed-form oracle on
// the 101-point grid plus uniform samples.
bool OracleFindsFailure(const PlantedModel& p, const AssumptionTree& a, const InputProfile& profile,
                        Rng& rng) {
  const std::size_t dims = profile.dimension();
  std::size_t cells = 1;
  for (std::size_t d = 0; d < dims; ++d) cells *= 101;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    ControlPointAssignment x(profile.signal_count(), profile.control_points());
    std::size_t rest = cell;
    for (std::size_t d = 0; d < dims; ++d) {
      const InputSpec& in = profile.inputs()[d / profile.control_points()];
      x.mutable_values()[d] = in.lo + static_cast<double>(rest % 101) / 100.0 * (in.hi - in.lo);
      rest /= 101;
    }
    if (Evaluate(a, x) && p.fails(x)) return true;
  }
  for (int i = 0; i < 20000; ++i) {
    const auto x = UniformAssignment(profile, rng);
    if (Evaluate(a, x) && p.fails(x)) return true;
  }
  return false;
}

Outcome CheckerVsOracle() {
  std::size_t total = 0, agree = 0, replay_fail = 0, label_conflicts = 0, vacuous = 0;
  Rng rng(3);
  for (const char* name : {"threshold", "linear", "bilinear", "disk", "integrator"}) {
    const PlantedModel p = *FindPlantedModel(name);
    const ModelSpec model = p.Model();
    const Requirement req = p.Req().WithDefaultScales(model);
    const InputProfile profile = model.Profile();
    CheckerConfig config;
    config.resolution = 101;
    config.seed = 11;
    for (const PlantedCase& c : CasesFor(name)) {
      ++total;
      const auto a = AssumptionTree::Parse(c.assumption, profile);
      if (OracleFindsFailure(p, a, profile, rng) == c.sound) ++label_conflicts;
      const CheckVerdict v = Check(model, req, &a, profile, config);
      if (v.vacuous) ++vacuous;
      const bool verdict_sound = v.kind == VerdictKind::kValid && !v.vacuous;
      const bool verdict_violation = v.kind == VerdictKind::kViolation;
      if ((c.sound && verdict_sound) || (!c.sound && verdict_violation)) ++agree;
      if (verdict_violation) {
        const double r = RobustnessOf(model, req, profile, *v.counterexample);
        if (!(r < 0.0) || !Evaluate(a, *v.counterexample) || !p.fails(*v.counterexample)) {
          ++replay_fail;
        }
      }
    }
  }
  return {total == 100 && agree == total && replay_fail == 0 && label_conflicts == 0,
          Fmt("%g/%g verdicts agree, %g counterexamples failed replay, %g oracle label conflicts",
              double(agree), double(total), double(replay_fail), double(label_conflicts)) +
              Fmt(", %g vacuous", double(vacuous))};
}

Outcome ExpressivenessGap() {
  const PlantedModel p = *FindPlantedModel("linear-wide");
  const ModelSpec model = p.Model();
  const Requirement req = p.Req().WithDefaultScales(model);
  const InputProfile profile = model.Profile();
  std::size_t dt_single = 0, gp_hits = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const TestSuite ts = GenSuite(model, req, nullptr, profile, {.count = 500, .seed = seed});
    if (OnlySingleVariableConditions(DtGenerate(ts))) ++dt_single;
    GpConfig config;  // default settings
    config.pop_size = 200;
    config.gen_size = 30;
    config.seed = seed;
    const LearnResult r = GpGenerate(ts, config, nullptr);
    if (r.best_fitness.fn > 1.0 && HasMultiSignalRel(r.best)) ++gp_hits;
  }
  return {dt_single == 20 && gp_hits >= 16,
          Fmt("DT single-variable in %g/20 seeds; GP fn > 1 with a two-variable exp in %g/20",
              double(dt_single), double(gp_hits))};
}

Outcome InformativenessOrdering() {
  const Learner learners[] = {Learner::kGp, Learner::kDt, Learner::kRs};
  std::vector<double> scored[3], raw[3];
  std::size_t sound[3] = {0, 0, 0};
  for (const PlantedModel& p : BilinearSuite()) {
    const ModelSpec model = p.Model();
    const Requirement req = p.Req();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      for (int l = 0; l < 3; ++l) {
        RunConfig config = PlantedLoopConfig(seed);
        config.sba = learners[l];
        config.max_iterations = 20;
        const RunResult r = RunLoop(model, req, config);
        raw[l].push_back(static_cast<double>(r.inf_v));
        // A run without a sound assumption contributes no valid inputs.
        scored[l].push_back(r.sound ? static_cast<double>(r.inf_v) : 0.0);
        if (r.sound) ++sound[l];
      }
    }
  }
  const double gp = Median(scored[0]), dt = Median(scored[1]), rs = Median(scored[2]);
  const RankSumResult test = WilcoxonRankSum(scored[0], scored[1]);
  std::string detail = Fmt("median INF_V of sound results GP %g, DT %g, RS %g; GP vs DT p = %.3g",
                           gp, dt, rs, test.p_value);
  detail += Fmt("; sound runs GP %g/50, DT %g/50, RS %g/50", double(sound[0]), double(sound[1]),
                double(sound[2]));
  detail += Fmt("; raw medians GP %g, DT %g, RS %g", Median(raw[0]), Median(raw[1]),
                Median(raw[2]));
  return {gp >= dt && gp >= rs && test.p_value < 0.05, detail};
}

Outcome LoopSoundness() {
  const char* models[] = {"threshold", "linear", "bilinear", "disk"};
  std::size_t sound = 0, rechecked = 0, oracle_agree = 0, max_iterations = 0;
  Rng rng(5);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PlantedModel p = *FindPlantedModel(models[seed % 4]);
    const ModelSpec model = p.Model();
    const Requirement req = p.Req();
    RunConfig config = PlantedLoopConfig(seed);
    config.max_iterations = 100;
    const RunResult r = RunLoop(model, req, config);
    max_iterations = std::max(max_iterations, r.iterations);
    if (!r.sound) continue;
    ++sound;
    CheckerConfig independent;
    independent.resolution = 101;
    independent.seed = 0xfeed + seed;
    const CheckVerdict v =
        Check(model, req.WithDefaultScales(model), &r.assumption, r.profile, independent);
    if (v.Sound() && v.kind == VerdictKind::kValid) ++rechecked;
    if (!OracleFindsFailure(p, r.assumption, r.profile, rng)) ++oracle_agree;
  }
  return {sound >= 16 && rechecked == sound,
          Fmt("%g/20 runs sound, %g/%g re-check Valid on the grid, at most %g iterations", double(sound),
              double(rechecked), double(sound), double(max_iterations)) +
              Fmt("; off the grid the closed-form oracle finds no failure for %g/%g", double(oracle_agree),
                  double(sound))};
}

Outcome TermRecovery() {
  const PlantedModel p = *FindPlantedModel("dominant");
  const ModelSpec model = p.Model();
  const InputProfile profile = model.Profile();
  std::vector<AssumptionTree> results;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RunConfig config = PlantedLoopConfig(seed);
    config.stop = StopCriterion::kTimeout;
    config.max_iterations = 3;
    config.checker.resolution = 21;
    results.push_back(RunLoop(model, p.Req(), config).assumption);
  }
  const auto reference = AssumptionTree::Parse(p.reference_assumption, profile);
  const auto rows = TermRecoveryReport(results, reference);
  // The dominant term: largest |coefficient * range| among non-constant terms.
  const TermRecoveryRow* dominant = nullptr;
  for (const TermRecoveryRow& row : rows) {
    if (row.reference.monomial.empty()) continue;
    if (!dominant || std::abs(row.reference.coefficient) > std::abs(dominant->reference.coefficient)) {
      dominant = &row;
    }
  }
  std::string detail;
  for (const TermRecoveryRow& row : rows) {
    if (!detail.empty()) detail += "; ";
    detail += MonomialText(row.reference.monomial, profile) + " N=" + std::to_string(row.found);
    if (row.same_sign_pct) detail += Fmt(" S=%g%%", *row.same_sign_pct);
  }
  const bool pass = dominant && dominant->found >= 10 && dominant->same_sign_pct &&
                    *dominant->same_sign_pct >= 70.0;
  return {pass, "dominant " + (dominant ? MonomialText(dominant->reference.monomial, profile)
                                        : std::string("?")) +
                    " of 20 runs; " + detail};
}

// Artifact text with wall-clock fields removed.
std::string Artifact(const RunResult& r) {
  auto j = nlohmann::json::parse(ToJson(r));
  j.erase("wall_seconds");
  for (auto& h : j["history"]) h.erase("seconds");
  return j.dump();
}

Outcome Determinism() {
  std::size_t checks = 0, differ = 0;
  auto same = [&](const std::string& a, const std::string& b) {
    ++checks;
    if (a != b) ++differ;
  };
  const unsigned many = 4;
  const PlantedModel p = *FindPlantedModel("bilinear");
  const ModelSpec model = p.Model();
  const Requirement req = p.Req().WithDefaultScales(model);
  const InputProfile profile = model.Profile();

  auto suite = [&](unsigned threads) {
    std::ostringstream out;
    WriteSuiteCsv(out, GenSuite(model, req, nullptr, profile,
                                {.count = 300, .seed = 42, .threads = threads}));
    return out.str();
  };
  same(suite(1), suite(1));
  same(suite(1), suite(many));

  const TestSuite ts = GenSuite(model, req, nullptr, profile, {.count = 300, .seed = 42});
  auto learn = [&](bool random_search, unsigned threads) {
    GpConfig config;
    config.pop_size = 80;
    config.gen_size = 10;
    config.limits.const_min = -1.0;
    config.limits.const_max = 1.0;
    config.seed = 9;
    config.threads = threads;
    const LearnResult r = random_search ? RsGenerate(ts, config, nullptr)
                                        : GpGenerate(ts, config, nullptr);
    std::ostringstream out;
    out << r.best.ToString(profile) << '\n';
    WriteTelemetryCsv(out, r.telemetry);
    for (const Individual& ind : r.final_population.individuals) out << ind.tree.ToString(profile) << '\n';
    return out.str();
  };
  for (bool rs : {false, true}) {
    same(learn(rs, 1), learn(rs, 1));
    same(learn(rs, 1), learn(rs, many));
  }
  same(DtGenerate(ts).ToString(profile), DtGenerate(ts).ToString(profile));

  auto check = [&](const char* text, unsigned threads) {
    const auto a = AssumptionTree::Parse(text, profile);
    CheckerConfig config;
    config.resolution = 101;
    config.seed = 5;
    config.threads = threads;
    return ToJson(Check(model, req, &a, profile, config), profile);
  };
  for (const char* text : {"u1[1] * u2[1] <= 0.2", "u1[1] <= 0.9"}) {
    same(check(text, 1), check(text, 1));
    same(check(text, 1), check(text, many));
  }

  for (Learner l : {Learner::kGp, Learner::kDt, Learner::kRs}) {
    auto run = [&](unsigned threads) {
      RunConfig config = PlantedLoopConfig(3);
      config.sba = l;
      config.max_iterations = 3;
      config.stop = StopCriterion::kTimeout;
      config.threads = threads;
      return Artifact(RunLoop(model, p.Req(), config));
    };
    same(run(1), run(1));
    same(run(1), run(many));
  }

  const auto a = AssumptionTree::Parse("u1[1] + u2[1] <= 1", profile);
  same(std::to_string(InformativeValue(a, profile, 77)),
       std::to_string(InformativeValue(a, profile, 77)));

  auto campaign = [&](unsigned threads) {
    Campaign c;
    for (const char* name : {"threshold", "bilinear"}) {
      const PlantedModel m = *FindPlantedModel(name);
      c.entries.push_back({m.name, m.Model(), m.Req(), std::nullopt});
    }
    c.config = PlantedLoopConfig(21);
    c.config.nbr_runs = 2;
    c.config.max_iterations = 2;
    c.config.threads = threads;
    auto runs = RunCampaign(c);
    std::string text;
    for (CampaignRun& r : runs) text += Artifact(r.result);
    std::ostringstream summary;
    WriteSummaryCsv(summary, Summarize(runs));
    return text + summary.str();
  };
  same(campaign(1), campaign(1));
  same(campaign(1), campaign(many));

  return {differ == 0, Fmt("%g artifact pairs compared (two runs, 1 vs %g threads), %g differ",
                           double(checks), double(many), double(differ))};
}

Outcome RankSumStatistics() {
  // Two-sample example with a published U = 35 (n1 = 10, n2 = 5).
  const std::vector<double> x{0.80, 0.83, 1.89, 1.04, 1.45, 1.38, 1.91, 1.64, 0.73, 1.46};
  const std::vector<double> y{1.15, 0.88, 0.90, 0.74, 1.21};
  // By hand: ranks of x sum to 90, U = 90 - 55 = 35, mean 25, variance
  // 10 * 5 * 16 / 12, z = (|35 - 25| - 0.5) / sqrt(66.67) = 1.16351,
  // p = 2 (1 - Phi(z)) = 0.244624.
  const double expected_p = 0.244624;
  const RankSumResult r = WilcoxonRankSum(x, y);
  const double dp = std::abs(r.p_value - expected_p);
  return {r.u == 35.0 && r.rank_sum == 90.0 && dp < 1e-3,
          Fmt("W = %g, U = %g, p = %.6f, |dp| = %.2g", r.rank_sum, r.u, r.p_value, dp)};
}

}  // namespace
}  // namespace envassume

int main(int argc, char** argv) {
  using namespace envassume;
  const std::vector<Criterion> criteria = {
      {1, "fitness algebra exactness", 1.0, FitnessAlgebra},
      {2, "translation oracle equivalence", 30.0, TranslationEquivalence},
      {3, "checker vs analytic oracle", 300.0, CheckerVsOracle},
      {4, "expressiveness gap (DT vs GP)", 1200.0, ExpressivenessGap},
      {5, "informativeness ordering", 1800.0, InformativenessOrdering},
      {6, "end-to-end loop soundness", 900.0, LoopSoundness},
      {7, "dominant term recovery", 1800.0, TermRecovery},
      {8, "determinism", 300.0, Determinism},
      {9, "rank-sum statistics", 1.0, RankSumStatistics},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.limit_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("[%s] %d %s: %s (%.2f s, limit %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.title,
                o.detail.c_str(), seconds, c.limit_seconds);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
