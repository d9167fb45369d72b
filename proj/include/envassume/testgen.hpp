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

#ifndef ENVASSUME_TESTGEN_HPP
#define ENVASSUME_TESTGEN_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "envassume/model.hpp"
#include "envassume/requirement.hpp"
#include "envassume/rng.hpp"
#include "envassume/signals.hpp"

namespace envassume {

struct TestCase {
  ControlPointAssignment assignment;
  double robustness = 0.0;
  Verdict verdict = Verdict::kPass;
  // Set when simulating the case failed; such cases are not used for learning.
  std::optional<std::string> error;

  bool ok() const { return !error.has_value(); }
};

struct TestSuite {
  InputProfile profile;
  std::vector<TestCase> cases;

  std::size_t size() const { return cases.size(); }
  // Cases without an error.
  std::size_t usable() const;
  std::size_t passing() const;
  std::size_t failing() const;
};

// Draws one assignment. The default draws every control point uniformly in
// its input range.
using Sampler = std::function<ControlPointAssignment(const InputProfile&, Rng&)>;
ControlPointAssignment UniformAssignment(const InputProfile& profile, Rng& rng);

struct GenSuiteOptions {
  std::size_t count = 300;
  std::uint64_t seed = 0;
  bool accumulate = true;  // keep the prior suite's cases
  unsigned threads = 0;
  Sampler sampler;  // empty means UniformAssignment
};

// Robustness of requirement `req` on the trace produced by assignment x. With
// `bounded`, temporal windows are cut at the end of the trace instead of
// raising HorizonError.
double RobustnessOf(const ModelSpec& model, const Requirement& req, const InputProfile& profile,
                    const ControlPointAssignment& x, bool bounded = false);

// Generates `count` new labeled cases. Draw i uses its own stream derived
// from the seed, so the suite does not depend on the thread count.
TestSuite GenSuite(const ModelSpec& model, const Requirement& req, const TestSuite* prior,
                   const InputProfile& profile, const GenSuiteOptions& options);

// CSV: one column per (signal, position) named `u[j]`, then robustness and
// verdict (pass, fail or error).
void WriteSuiteCsv(std::ostream& out, const TestSuite& suite);
TestSuite ReadSuiteCsv(std::istream& in, const InputProfile& profile);

}  // namespace envassume

#endif  // ENVASSUME_TESTGEN_HPP
