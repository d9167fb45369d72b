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

#include "envassume/testgen.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "envassume/errors.hpp"
#include "envassume/lexer.hpp"
#include "envassume/parallel.hpp"

namespace envassume {

std::size_t TestSuite::usable() const {
  std::size_t n = 0;
  for (const auto& c : cases) n += c.ok() ? 1 : 0;
  return n;
}

std::size_t TestSuite::passing() const {
  std::size_t n = 0;
  for (const auto& c : cases) n += (c.ok() && c.verdict == Verdict::kPass) ? 1 : 0;
  return n;
}

std::size_t TestSuite::failing() const {
  std::size_t n = 0;
  for (const auto& c : cases) n += (c.ok() && c.verdict == Verdict::kFail) ? 1 : 0;
  return n;
}

ControlPointAssignment UniformAssignment(const InputProfile& profile, Rng& rng) {
  const std::size_t n = profile.control_points();
  ControlPointAssignment x(profile.signal_count(), n);
  for (std::size_t s = 0; s < profile.signal_count(); ++s) {
    const InputSpec& in = profile.inputs()[s];
    for (std::size_t p = 1; p <= n; ++p) x.set(s, p, rng.Uniform(in.lo, in.hi));
  }
  return x;
}

double RobustnessOf(const ModelSpec& model, const Requirement& req, const InputProfile& profile,
                    const ControlPointAssignment& x, bool bounded) {
  const auto trace = Simulate(model, Interpolate(x, profile, model.domain()));
  return bounded ? BoundedRobustness(trace, req) : Robustness(trace, req);
}

TestSuite GenSuite(const ModelSpec& model, const Requirement& req, const TestSuite* prior,
                   const InputProfile& profile, const GenSuiteOptions& options) {
  if (options.count == 0) throw Error("test suite size must be >= 1");
  TestSuite suite;
  suite.profile = profile;
  if (prior != nullptr && options.accumulate) {
    if (!(prior->profile == profile)) throw Error("prior suite uses a different input profile");
    suite.cases = prior->cases;
  }
  const Sampler sampler = options.sampler ? options.sampler : Sampler(UniformAssignment);
  std::vector<TestCase> fresh(options.count);
  ParallelFor(options.count, options.threads, [&](std::size_t i) {
    Rng rng(DeriveSeed(options.seed, i));
    TestCase& tc = fresh[i];
    tc.assignment = sampler(profile, rng);
    try {
      tc.robustness = RobustnessOf(model, req, profile, tc.assignment);
      tc.verdict = VerdictOf(tc.robustness);
    } catch (const SimulationError& e) {
      tc.error = e.what();
      tc.verdict = Verdict::kFail;
    }
  });
  suite.cases.insert(suite.cases.end(), std::make_move_iterator(fresh.begin()),
                     std::make_move_iterator(fresh.end()));
  return suite;
}

void WriteSuiteCsv(std::ostream& out, const TestSuite& suite) {
  const InputProfile& profile = suite.profile;
  for (const auto& in : profile.inputs()) {
    for (std::size_t p = 1; p <= profile.control_points(); ++p) {
      out << in.name << '[' << p << "],";
    }
  }
  out << "robustness,verdict\n";
  for (const auto& tc : suite.cases) {
    for (double v : tc.assignment.values()) out << FormatNumber(v) << ',';
    if (tc.ok()) {
      out << FormatNumber(tc.robustness) << ',' << ToString(tc.verdict) << '\n';
    } else {
      out << ",error\n";
    }
  }
}

TestSuite ReadSuiteCsv(std::istream& in, const InputProfile& profile) {
  TestSuite suite;
  suite.profile = profile;
  const std::size_t dim = profile.dimension();
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty test-suite CSV", 1, 1);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.size() != dim + 2) {
      throw ParseError("expected " + std::to_string(dim + 2) + " columns", line_no, 1);
    }
    std::vector<double> values(dim);
    try {
      for (std::size_t i = 0; i < dim; ++i) values[i] = std::stod(cells[i]);
    } catch (const std::exception&) {
      throw ParseError("malformed number", line_no, 1);
    }
    TestCase tc;
    tc.assignment = ControlPointAssignment(profile.signal_count(), profile.control_points(),
                                           std::move(values));
    std::string verdict = cells[dim + 1];
    if (!verdict.empty() && verdict.back() == '\r') verdict.pop_back();
    if (verdict == "error") {
      tc.error = "recorded as error";
      tc.verdict = Verdict::kFail;
    } else {
      tc.robustness = std::stod(cells[dim]);
      if (verdict == "pass") {
        tc.verdict = Verdict::kPass;
      } else if (verdict == "fail") {
        tc.verdict = Verdict::kFail;
      } else {
        throw ParseError("unknown verdict '" + verdict + "'", line_no, 1);
      }
    }
    suite.cases.push_back(std::move(tc));
  }
  return suite;
}

}  // namespace envassume
