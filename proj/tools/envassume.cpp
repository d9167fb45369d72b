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

// Command-line front end: simulation, checking, assumption synthesis and
// campaign comparison.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "envassume/campaign.hpp"
#include "envassume/checker.hpp"
#include "envassume/config.hpp"
#include "envassume/errors.hpp"
#include "envassume/io.hpp"
#include "envassume/library.hpp"
#include "envassume/loop.hpp"
#include "envassume/model.hpp"
#include "envassume/requirement.hpp"
#include "envassume/terms.hpp"

namespace fs = std::filesystem;
using namespace envassume;

namespace {

struct Problem {
  std::string model_path;
  std::string library;
  std::string req_path;
  std::optional<std::size_t> control_points;
  std::string config_path;
  std::optional<std::uint64_t> seed;

  void AddOptions(CLI::App* app) {
    app->add_option("-m,--model", model_path, "Model spec file");
    app->add_option("-l,--library", library, "Planted model name (instead of --model/--req)");
    app->add_option("-r,--req", req_path, "Requirement file");
    app->add_option("-n,--control-points", control_points, "Control points per input");
    app->add_option("-c,--config", config_path, "Run configuration file");
    app->add_option("-s,--seed", seed, "Seed (overrides the configuration)");
  }

  ModelSpec Model() const {
    if (!library.empty()) return Planted().Model();
    if (model_path.empty()) throw Error("either --model or --library is required");
    return ModelSpec::Load(ReadTextFile(model_path));
  }

  Requirement Req() const {
    if (!req_path.empty()) return Requirement::Parse(ReadTextFile(req_path));
    if (!library.empty()) return Planted().Req();
    throw Error("either --req or --library is required");
  }

  RunConfig Config() const {
    RunConfig c = config_path.empty() ? RunConfig{}
                                           : ParseConfig(ReadTextFile(config_path));
    if (seed) c.seed = *seed;
    if (control_points) c.control_points = control_points;
    return c;
  }

  PlantedModel Planted() const {
    const auto p = FindPlantedModel(library);
    if (!p) throw Error("unknown planted model: " + library);
    return *p;
  }
};

void Emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    WriteTextFile(path, text);
  }
}

// Parses `u[1]=0.3, v[2]=-1` into an assignment over the profile.
ControlPointAssignment ParseAssignment(const std::string& text, const InputProfile& profile) {
  std::map<std::pair<std::string, std::size_t>, double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto open = item.find('['), close = item.find(']'), eq = item.find('=');
    if (open == std::string::npos || close == std::string::npos || eq == std::string::npos) {
      throw Error("malformed control point value: " + item);
    }
    std::string name = item.substr(0, open);
    name.erase(0, name.find_first_not_of(' '));
    values[{name, std::stoul(item.substr(open + 1, close - open - 1))}] =
        std::stod(item.substr(eq + 1));
  }
  return ControlPointAssignment::FromMap(profile, values);
}

std::string CounterexampleCsv(const ControlPointAssignment& x, const InputProfile& profile,
                              const TimeDomain& domain) {
  std::ostringstream out;
  WriteSignalCsv(out, Interpolate(x, profile, domain));
  return out.str();
}

int Simulate(const Problem& p, const std::string& inputs_path, const std::string& assignment,
             const std::string& out_path) {
  const ModelSpec model = p.Model();
  SignalBundle inputs = [&] {
    if (!inputs_path.empty()) {
      std::ifstream in(inputs_path);
      if (!in) throw Error("cannot read " + inputs_path);
      return ReadSignalCsv(in);
    }
    const InputProfile profile = model.Profile(p.control_points);
    return Interpolate(ParseAssignment(assignment, profile), profile, model.domain());
  }();
  const SimulationTrace trace = Simulate(model, inputs);
  std::ostringstream csv;
  SignalBundle all = trace.inputs;
  for (std::size_t i = 0; i < trace.outputs.size(); ++i) {
    all.Add(trace.outputs.names()[i], trace.outputs.signal(i));
  }
  WriteSignalCsv(csv, all);
  Emit(csv.str(), out_path);
  if (!p.req_path.empty() || !p.library.empty()) {
    const Requirement req = p.Req().WithDefaultScales(model);
    const double rob = Robustness(trace, req);
    std::fprintf(stderr, "robustness %.9g (%s)\n", rob, std::string(ToString(VerdictOf(rob))).c_str());
  }
  return 0;
}

int Sanity(const Problem& p) {
  ModelSpec model = p.Model();
  const RunConfig c = p.Config();
  if (c.simulation_time) model = model.WithHorizon(*c.simulation_time);
  const Requirement req = p.Req().WithDefaultScales(model);
  const SanityResult r = SanityCheck(model, req, model.Profile(c.control_points), c.checker);
  std::cout << ToString(r) << '\n';
  return 0;
}

int Synthesize(const Problem& p, const std::string& sba, const std::string& out_path,
               const std::string& cex_path) {
  RunConfig c = p.Config();
  if (!sba.empty()) {
    const auto l = ParseLearner(sba);
    if (!l) throw Error("unknown learner: " + sba);
    c.sba = *l;
  }
  const RunResult r = RunLoop(p.Model(), p.Req(), c);
  Emit(ToJson(r), out_path);
  if (!cex_path.empty() && r.verdict.counterexample) {
    WriteTextFile(cex_path, CounterexampleCsv(*r.verdict.counterexample, r.profile, r.domain));
  }
  std::fprintf(stderr, "%s after %zu iterations: %s (INF_V %zu)\n",
               r.sound ? "sound" : "not sound", r.iterations,
               r.assumption.ToString(r.profile).c_str(), r.inf_v);
  return r.sound ? 0 : 2;
}

int EvaluateAssumption(const Problem& p, const std::string& text, const std::string& out_path,
                       const std::string& cex_path) {
  ModelSpec model = p.Model();
  const RunConfig c = p.Config();
  if (c.simulation_time) model = model.WithHorizon(*c.simulation_time);
  const Requirement req = p.Req().WithDefaultScales(model);
  const InputProfile profile = model.Profile(c.control_points);
  const AssumptionTree a = AssumptionTree::Parse(text, profile);
  const CheckVerdict v = Check(model, req, &a, profile, c.checker);
  auto j = nlohmann::json::parse(ToJson(v, profile));
  j["assumption"] = nlohmann::json::parse(ToJson(a, profile, model.domain()));
  j["inf_v"] = InformativeValue(a, profile, c.inf_v_seed, 100, c.gp.tolerances);
  Emit(j.dump(2), out_path);
  if (!cex_path.empty() && v.counterexample) {
    WriteTextFile(cex_path, CounterexampleCsv(*v.counterexample, profile, model.domain()));
  }
  return v.Sound() ? 0 : 2;
}

int Compare(const std::string& campaign_path, const std::string& out_dir,
            std::optional<unsigned> threads) {
  Campaign campaign =
      ParseCampaign(ReadTextFile(campaign_path), fs::path(campaign_path).parent_path());
  if (threads) campaign.config.threads = *threads;
  const auto runs = RunCampaign(campaign);
  const fs::path dir(out_dir);
  for (const CampaignRun& r : runs) {
    WriteTextFile(dir / "runs" /
                      (r.entry + "_" + std::string(ToString(r.learner)) + "_" +
                       std::to_string(r.run) + ".json"),
                  ToJson(r.result));
  }
  std::ostringstream runs_csv, summary_csv, comparison_csv;
  WriteRunsCsv(runs_csv, runs);
  const auto summary = Summarize(runs);
  WriteSummaryCsv(summary_csv, summary);
  WriteComparisonCsv(comparison_csv, runs);
  WriteTextFile(dir / "runs.csv", runs_csv.str());
  WriteTextFile(dir / "summary.csv", summary_csv.str());
  WriteTextFile(dir / "comparison.csv", comparison_csv.str());
  std::cout << summary_csv.str() << comparison_csv.str();
  return 0;
}

int AnalyzeTerms(const Problem& p, const std::string& reference,
                 const std::vector<std::string>& run_files, const std::string& out_path) {
  const RunConfig c = p.Config();
  const InputProfile profile = p.Model().Profile(c.control_points);
  const std::string ref_text = !reference.empty() ? reference : p.Planted().reference_assumption;
  std::vector<AssumptionTree> runs;
  for (const std::string& file : run_files) {
    const auto j = nlohmann::json::parse(ReadTextFile(file));
    runs.push_back(
        AssumptionTree::Parse(j.at("assumption").at("assumption").get<std::string>(), profile));
  }
  std::ostringstream csv;
  WriteTermReportCsv(csv, TermRecoveryReport(runs, AssumptionTree::Parse(ref_text, profile)),
                     profile);
  Emit(csv.str(), out_path);
  return 0;
}

int Library(const std::string& write_dir) {
  for (const PlantedModel& p : PlantedModels()) {
    std::cout << p.name << ": " << p.requirement_text << "  reference " << p.reference_assumption
              << '\n';
    if (!write_dir.empty()) {
      WriteTextFile(fs::path(write_dir) / (p.name + ".model"), p.model_text);
      WriteTextFile(fs::path(write_dir) / (p.name + ".req"), p.requirement_text + "\n");
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Environment assumption learning for simulated models"};
  app.require_subcommand(1);

  Problem problem;
  std::string out, cex, inputs, assignment, sba, text, campaign, reference, write_dir;
  std::vector<std::string> run_files;
  std::optional<unsigned> threads;

  auto* simulate = app.add_subcommand("simulate", "Simulate a model and print its trace");
  problem.AddOptions(simulate);
  simulate->add_option("-i,--inputs", inputs, "Input signal CSV");
  simulate->add_option("-a,--assign", assignment, "Control point values, e.g. \"u[1]=0.2,u[2]=1\"");
  simulate->add_option("-o,--out", out, "Trace CSV (default stdout)");

  auto* sanity = app.add_subcommand("sanity-check", "Check the requirement without assumption");
  problem.AddOptions(sanity);

  auto* synth = app.add_subcommand("synthesize", "Learn an assumption");
  problem.AddOptions(synth);
  synth->add_option("--sba", sba, "Learner: GP, DT or RS");
  synth->add_option("-o,--out", out, "Run JSON (default stdout)");
  synth->add_option("--counterexample", cex, "Write the last counterexample as signal CSV");

  auto* evaluate = app.add_subcommand("evaluate", "Check a given assumption");
  problem.AddOptions(evaluate);
  evaluate->add_option("-A,--assumption", text, "Assumption text")->required();
  evaluate->add_option("-o,--out", out, "Verdict JSON (default stdout)");
  evaluate->add_option("--counterexample", cex, "Write the counterexample as signal CSV");

  auto* compare = app.add_subcommand("compare", "Run a campaign and compare learners");
  compare->add_option("campaign", campaign, "Campaign file")->required();
  compare->add_option("-o,--out", out, "Output directory")->required();
  compare->add_option("-j,--threads", threads, "Worker threads");

  auto* terms = app.add_subcommand("analyze-terms", "Term recovery across run results");
  problem.AddOptions(terms);
  terms->add_option("--reference", reference, "Reference assumption (default: planted one)");
  terms->add_option("runs", run_files, "Run JSON files")->required();
  terms->add_option("-o,--out", out, "CSV (default stdout)");

  auto* library = app.add_subcommand("library", "List the planted models");
  library->add_option("-w,--write", write_dir, "Write model and requirement files here");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*simulate) return Simulate(problem, inputs, assignment, out);
    if (*sanity) return Sanity(problem);
    if (*synth) return Synthesize(problem, sba, out, cex);
    if (*evaluate) return EvaluateAssumption(problem, text, out, cex);
    if (*compare) return Compare(campaign, out, threads);
    if (*terms) return AnalyzeTerms(problem, reference, run_files, out);
    if (*library) return Library(write_dir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
