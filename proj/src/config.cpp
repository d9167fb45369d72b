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

#include "envassume/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "envassume/errors.hpp"
#include "envassume/lexer.hpp"

namespace envassume {

namespace {

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string Upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

double ParseDouble(const std::string& text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw Error("expected a number, found '" + text + "'");
  }
  return v;
}

std::uint64_t ParseUnsigned(const std::string& text) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error("expected a non-negative integer, found '" + text + "'");
  }
  return v;
}

double ParseRatio(const std::string& text) {
  if (!text.empty() && text.back() == '%') {
    return ParseDouble(Trim(std::string_view(text).substr(0, text.size() - 1))) / 100.0;
  }
  return ParseDouble(text);
}

bool ParseBool(const std::string& text) {
  const std::string u = Upper(text);
  if (u == "TRUE" || u == "ON" || u == "YES" || u == "1") return true;
  if (u == "FALSE" || u == "OFF" || u == "NO" || u == "0") return false;
  throw Error("expected a boolean, found '" + text + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& Setters() {
  static const std::map<std::string, Setter> kSetters = {
      {"SBA",
       [](RunConfig& c, const std::string& v) {
         auto l = ParseLearner(v);
         if (!l) throw Error("SBA must be GP, DT or RS");
         c.sba = *l;
       }},
      {"ST", [](RunConfig& c, const std::string& v) { c.simulation_time = ParseDouble(v); }},
      {"TS_Size", [](RunConfig& c, const std::string& v) { c.ts_size = ParseUnsigned(v); }},
      {"Stop_Crt",
       [](RunConfig& c, const std::string& v) {
         const std::string u = Upper(v);
         if (u == "MC") {
           c.stop = StopCriterion::kMc;
         } else if (u == "TIMEOUT") {
           c.stop = StopCriterion::kTimeout;
         } else {
           throw Error("Stop_Crt must be MC or Timeout");
         }
       }},
      {"Timeout",
       [](RunConfig& c, const std::string& v) { c.timeout_seconds = ParseDuration(v); }},
      {"Max_Iterations",
       [](RunConfig& c, const std::string& v) { c.max_iterations = ParseUnsigned(v); }},
      {"Nbr_Runs", [](RunConfig& c, const std::string& v) { c.nbr_runs = ParseUnsigned(v); }},
      {"Control_Points",
       [](RunConfig& c, const std::string& v) { c.control_points = ParseUnsigned(v); }},
      {"Accumulate", [](RunConfig& c, const std::string& v) { c.accumulate = ParseBool(v); }},
      {"Max_Conj",
       [](RunConfig& c, const std::string& v) { c.gp.limits.max_conj = ParseUnsigned(v); }},
      {"Max_Disj",
       [](RunConfig& c, const std::string& v) { c.gp.limits.max_disj = ParseUnsigned(v); }},
      {"Max_Depth",
       [](RunConfig& c, const std::string& v) { c.gp.limits.max_depth = ParseUnsigned(v); }},
      {"Const_Min",
       [](RunConfig& c, const std::string& v) { c.gp.limits.const_min = ParseDouble(v); }},
      {"Const_Max",
       [](RunConfig& c, const std::string& v) { c.gp.limits.const_max = ParseDouble(v); }},
      {"Init_Ratio",
       [](RunConfig& c, const std::string& v) { c.gp.init_ratio = ParseRatio(v); }},
      {"Pop_Size", [](RunConfig& c, const std::string& v) { c.gp.pop_size = ParseUnsigned(v); }},
      {"Gen_Size", [](RunConfig& c, const std::string& v) { c.gp.gen_size = ParseUnsigned(v); }},
      {"Sel_Crt",
       [](RunConfig& c, const std::string& v) {
         auto s = ParseSelection(v);
         if (!s) throw Error("Sel_Crt must be RWS, TRS or RANK");
         c.gp.selection = *s;
       }},
      {"T_Size",
       [](RunConfig& c, const std::string& v) { c.gp.tournament_size = ParseUnsigned(v); }},
      {"Mut_Rate", [](RunConfig& c, const std::string& v) { c.gp.mut_rate = ParseRatio(v); }},
      {"Cross_Rate",
       [](RunConfig& c, const std::string& v) { c.gp.cross_rate = ParseRatio(v); }},
      {"Allow_Division",
       [](RunConfig& c, const std::string& v) { c.gp.allow_division = ParseBool(v); }},
      {"Eps_Eq",
       [](RunConfig& c, const std::string& v) {
         c.gp.tolerances.equality = ParseDouble(v);
         c.checker.tolerances.equality = c.gp.tolerances.equality;
       }},
      {"Eps_Div",
       [](RunConfig& c, const std::string& v) {
         c.gp.tolerances.division = ParseDouble(v);
         c.checker.tolerances.division = c.gp.tolerances.division;
       }},
      {"DT_Min_Leaf",
       [](RunConfig& c, const std::string& v) { c.dt.min_leaf = ParseUnsigned(v); }},
      {"DT_Max_Depth",
       [](RunConfig& c, const std::string& v) { c.dt.max_depth = ParseUnsigned(v); }},
      {"Grid_Resolution",
       [](RunConfig& c, const std::string& v) { c.checker.resolution = ParseUnsigned(v); }},
      {"Max_Cells",
       [](RunConfig& c, const std::string& v) { c.checker.max_cells = ParseUnsigned(v); }},
      {"Falsification_Samples",
       [](RunConfig& c, const std::string& v) {
         c.checker.falsification_samples = ParseUnsigned(v);
       }},
      {"Check_Timeout",
       [](RunConfig& c, const std::string& v) {
         c.checker.time_budget_seconds = ParseDuration(v);
       }},
      {"Seed", [](RunConfig& c, const std::string& v) { c.seed = ParseUnsigned(v); }},
      {"INF_V_Seed", [](RunConfig& c, const std::string& v) { c.inf_v_seed = ParseUnsigned(v); }},
      {"Threads",
       [](RunConfig& c, const std::string& v) {
         c.threads = static_cast<unsigned>(ParseUnsigned(v));
       }},
  };
  return kSetters;
}

}  // namespace

std::string_view ToString(Learner l) {
  switch (l) {
    case Learner::kGp:
      return "GP";
    case Learner::kDt:
      return "DT";
    case Learner::kRs:
      return "RS";
  }
  return "?";
}

std::optional<Learner> ParseLearner(std::string_view text) {
  const std::string u = Upper(text);
  if (u == "GP") return Learner::kGp;
  if (u == "DT") return Learner::kDt;
  if (u == "RS") return Learner::kRs;
  return std::nullopt;
}

std::string_view ToString(StopCriterion s) {
  return s == StopCriterion::kMc ? "MC" : "Timeout";
}

double ParseDuration(std::string_view text) {
  std::string t = Trim(text);
  if (t.empty()) throw Error("empty duration");
  double unit = 1.0;
  switch (t.back()) {
    case 'h':
      unit = 3600.0;
      t.pop_back();
      break;
    case 'm':
      unit = 60.0;
      t.pop_back();
      break;
    case 's':
      t.pop_back();
      break;
    default:
      break;
  }
  const double v = ParseDouble(Trim(t)) * unit;
  if (v < 0.0) throw Error("duration must be >= 0");
  return v;
}

void RunConfig::Validate() const {
  if (ts_size == 0) throw Error("TS_Size must be >= 1");
  if (nbr_runs == 0) throw Error("Nbr_Runs must be >= 1");
  if (max_iterations == 0) throw Error("Max_Iterations must be >= 1");
  if (control_points && *control_points == 0) throw Error("Control_Points must be >= 1");
  if (simulation_time && !(*simulation_time > 0.0)) throw Error("ST must be > 0");
  gp.Validate();
  checker.Validate();
}

RunConfig ParseConfig(std::string_view text, const RunConfig& base) {
  RunConfig c = base;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string trimmed = Trim(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'Key = value'", line_no, 1);
    const std::string key = Trim(std::string_view(trimmed).substr(0, eq));
    const std::string value = Trim(std::string_view(trimmed).substr(eq + 1));
    const auto& setters = Setters();
    const auto it = setters.find(key);
    if (it == setters.end()) throw ParseError("unknown key '" + key + "'", line_no, 1);
    try {
      it->second(c, value);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(key + ": " + e.what(), line_no, eq + 2);
    }
  }
  // Both learners and the checker see the same tolerances.
  c.checker.tolerances = c.gp.tolerances;
  c.checker.threads = c.threads;
  c.gp.threads = c.threads;
  return c;
}

std::string ToText(const RunConfig& c) {
  std::ostringstream out;
  auto line = [&out](const char* key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  line("SBA", std::string(ToString(c.sba)));
  if (c.simulation_time) line("ST", FormatNumber(*c.simulation_time));
  line("TS_Size", std::to_string(c.ts_size));
  line("Stop_Crt", std::string(ToString(c.stop)));
  line("Timeout", FormatNumber(c.timeout_seconds));
  line("Max_Iterations", std::to_string(c.max_iterations));
  line("Nbr_Runs", std::to_string(c.nbr_runs));
  if (c.control_points) line("Control_Points", std::to_string(*c.control_points));
  line("Accumulate", c.accumulate ? "true" : "false");
  line("Max_Conj", std::to_string(c.gp.limits.max_conj));
  line("Max_Disj", std::to_string(c.gp.limits.max_disj));
  line("Max_Depth", std::to_string(c.gp.limits.max_depth));
  line("Const_Min", FormatNumber(c.gp.limits.const_min));
  line("Const_Max", FormatNumber(c.gp.limits.const_max));
  line("Init_Ratio", FormatNumber(c.gp.init_ratio));
  line("Pop_Size", std::to_string(c.gp.pop_size));
  line("Gen_Size", std::to_string(c.gp.gen_size));
  line("Sel_Crt", std::string(ToString(c.gp.selection)));
  line("T_Size", std::to_string(c.gp.tournament_size));
  line("Mut_Rate", FormatNumber(c.gp.mut_rate));
  line("Cross_Rate", FormatNumber(c.gp.cross_rate));
  line("Allow_Division", c.gp.allow_division ? "true" : "false");
  line("Eps_Eq", FormatNumber(c.gp.tolerances.equality));
  line("Eps_Div", FormatNumber(c.gp.tolerances.division));
  line("DT_Min_Leaf", std::to_string(c.dt.min_leaf));
  line("DT_Max_Depth", std::to_string(c.dt.max_depth));
  line("Grid_Resolution", std::to_string(c.checker.resolution));
  line("Max_Cells", std::to_string(c.checker.max_cells));
  line("Falsification_Samples", std::to_string(c.checker.falsification_samples));
  line("Check_Timeout", FormatNumber(c.checker.time_budget_seconds));
  line("Seed", std::to_string(c.seed));
  line("INF_V_Seed", std::to_string(c.inf_v_seed));
  line("Threads", std::to_string(c.threads));
  return out.str();
}

}  // namespace envassume
