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

#include "envassume/campaign.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "envassume/errors.hpp"
#include "envassume/io.hpp"
#include "envassume/lexer.hpp"
#include "envassume/library.hpp"
#include "envassume/parallel.hpp"
#include "envassume/rng.hpp"
#include "envassume/stats.hpp"

namespace envassume {

namespace {

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> Split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(Trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<double> InfValues(const std::vector<CampaignRun>& runs, Learner learner) {
  std::vector<double> out;
  for (const CampaignRun& r : runs) {
    if (r.learner == learner) out.push_back(static_cast<double>(r.result.inf_v));
  }
  return out;
}

}  // namespace

std::vector<CampaignRun> RunCampaign(const Campaign& campaign) {
  campaign.config.Validate();
  std::vector<CampaignRun> runs;
  for (const CampaignEntry& e : campaign.entries) {
    for (Learner l : campaign.learners) {
      for (std::size_t r = 0; r < campaign.config.nbr_runs; ++r) {
        runs.push_back({e.name, l, r, DeriveSeed(campaign.config.seed, r), {}});
      }
    }
  }
  std::map<std::string, const CampaignEntry*> by_name;
  for (const CampaignEntry& e : campaign.entries) by_name[e.name] = &e;
  ParallelFor(runs.size(), campaign.config.threads, [&](std::size_t i) {
    CampaignRun& run = runs[i];
    const CampaignEntry& e = *by_name.at(run.entry);
    RunConfig config = campaign.config;
    config.sba = run.learner;
    config.seed = run.seed;
    config.threads = 1;
    config.gp.threads = 1;
    config.checker.threads = 1;
    if (e.control_points) config.control_points = e.control_points;
    run.result = RunLoop(e.model, e.requirement, config);
  });
  return runs;
}

std::vector<CampaignSummary> Summarize(const std::vector<CampaignRun>& runs) {
  std::vector<CampaignSummary> out;
  std::vector<std::vector<double>> inf;
  for (const CampaignRun& r : runs) {
    auto it = std::find_if(out.begin(), out.end(), [&](const CampaignSummary& s) {
      return s.entry == r.entry && s.learner == r.learner;
    });
    if (it == out.end()) {
      out.push_back({r.entry, r.learner});
      inf.emplace_back();
      it = out.end() - 1;
    }
    const std::size_t k = static_cast<std::size_t>(it - out.begin());
    ++it->runs;
    if (r.result.sound) ++it->sound;
    inf[k].push_back(static_cast<double>(r.result.inf_v));
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    CampaignSummary& s = out[k];
    s.sound_rate = static_cast<double>(s.sound) / static_cast<double>(s.runs);
    s.inf_v_median = Median(inf[k]);
    s.inf_v_mean = std::accumulate(inf[k].begin(), inf[k].end(), 0.0) /
                   static_cast<double>(inf[k].size());
    const auto [lo, hi] = std::minmax_element(inf[k].begin(), inf[k].end());
    s.inf_v_min = static_cast<std::size_t>(*lo);
    s.inf_v_max = static_cast<std::size_t>(*hi);
  }
  return out;
}

void WriteRunsCsv(std::ostream& out, const std::vector<CampaignRun>& runs) {
  out << "entry,learner,run,seed,sanity,sound,verdict,inf_v,iterations,fn,wall_seconds,"
         "assumption\n";
  for (const CampaignRun& r : runs) {
    const RunResult& res = r.result;
    out << CsvField(r.entry) << ',' << ToString(r.learner) << ',' << r.run << ',' << r.seed
        << ',' << ToString(res.sanity) << ',' << (res.sound ? "true" : "false") << ','
        << ToString(res.verdict.kind) << ',' << res.inf_v << ',' << res.iterations << ','
        << FormatNumber(res.fitness.fn) << ',' << FormatNumber(res.wall_seconds) << ','
        << CsvField(res.assumption.ToString(res.profile)) << '\n';
  }
}

void WriteSummaryCsv(std::ostream& out, const std::vector<CampaignSummary>& summary) {
  out << "entry,learner,runs,sound,sound_rate,inf_v_median,inf_v_mean,inf_v_min,inf_v_max\n";
  for (const CampaignSummary& s : summary) {
    out << CsvField(s.entry) << ',' << ToString(s.learner) << ',' << s.runs << ',' << s.sound
        << ',' << FormatNumber(s.sound_rate) << ',' << FormatNumber(s.inf_v_median) << ','
        << FormatNumber(s.inf_v_mean) << ',' << s.inf_v_min << ',' << s.inf_v_max << '\n';
  }
}

void WriteComparisonCsv(std::ostream& out, const std::vector<CampaignRun>& runs) {
  out << "learner_a,learner_b,median_a,median_b,u,z,p_value\n";
  const auto gp = InfValues(runs, Learner::kGp);
  if (gp.empty()) return;
  for (Learner other : {Learner::kDt, Learner::kRs}) {
    const auto values = InfValues(runs, other);
    if (values.empty()) continue;
    const RankSumResult test = WilcoxonRankSum(gp, values);
    out << "GP," << ToString(other) << ',' << FormatNumber(Median(gp)) << ','
        << FormatNumber(Median(values)) << ',' << FormatNumber(test.u) << ','
        << FormatNumber(test.z) << ',' << FormatNumber(test.p_value) << '\n';
  }
}

Campaign ParseCampaign(std::string_view text, const std::filesystem::path& base_dir) {
  Campaign campaign;
  std::string config_text;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool learners_set = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = line;
    if (const auto hash = body.find('#'); hash != std::string::npos) body.erase(hash);
    const auto eq = body.find('=');
    const std::string key = eq == std::string::npos ? "" : Trim(std::string_view(body).substr(0, eq));
    if (key != "Entry" && key != "Learners") {
      config_text += line + '\n';
      continue;
    }
    config_text += '\n';  // keep line numbers aligned for ParseConfig errors
    const std::string value = Trim(std::string_view(body).substr(eq + 1));
    if (key == "Learners") {
      if (!learners_set) campaign.learners.clear();
      learners_set = true;
      for (const std::string& name : Split(value, ',')) {
        const auto l = ParseLearner(name);
        if (!l) throw ParseError("unknown learner '" + name + "'", line_no, eq + 2);
        campaign.learners.push_back(*l);
      }
      continue;
    }
    const auto fields = Split(value, ';');
    CampaignEntry entry;
    std::size_t cp_field = 0;
    if (fields[0].rfind("library:", 0) == 0) {
      const std::string name = fields[0].substr(8);
      const auto planted = FindPlantedModel(name);
      if (!planted) throw ParseError("unknown library model '" + name + "'", line_no, eq + 2);
      entry = {name, planted->Model(), planted->Req(), std::nullopt};
      cp_field = 1;
    } else {
      if (fields.size() < 3) {
        throw ParseError("expected 'name; model-file; requirement-file'", line_no, eq + 2);
      }
      entry.name = fields[0];
      entry.model = ModelSpec::Load(ReadTextFile(base_dir / fields[1]));
      entry.requirement = Requirement::Parse(ReadTextFile(base_dir / fields[2]));
      cp_field = 3;
    }
    if (fields.size() > cp_field + 1) throw ParseError("too many entry fields", line_no, eq + 2);
    if (fields.size() == cp_field + 1) {
      try {
        entry.control_points = static_cast<std::size_t>(std::stoul(fields[cp_field]));
      } catch (const std::exception&) {
        throw ParseError("bad control-point count '" + fields[cp_field] + "'", line_no, eq + 2);
      }
      if (*entry.control_points == 0) throw ParseError("control points must be >= 1", line_no, eq + 2);
    }
    for (const CampaignEntry& e : campaign.entries) {
      if (e.name == entry.name) throw ParseError("duplicate entry '" + entry.name + "'", line_no, 1);
    }
    campaign.entries.push_back(std::move(entry));
  }
  campaign.config = ParseConfig(config_text);
  return campaign;
}

}  // namespace envassume
