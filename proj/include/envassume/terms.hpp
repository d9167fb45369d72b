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

#ifndef ENVASSUME_TERMS_HPP
#define ENVASSUME_TERMS_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "envassume/assumption.hpp"
#include "envassume/signals.hpp"

namespace envassume {

struct TermRecoveryRow {
  Term reference;
  std::size_t runs = 0;
  std::size_t found = 0;                  // N
  std::optional<double> same_sign_pct;    // S, absent when N = 0
  std::optional<double> mean_difference;  // D
  std::optional<double> max_difference;   // MaxD
};

// One row per term of `reference` (as normalized by CountStats). A run
// contains the term when any of its rels has a term with the same monomial;
// among several, the one with the closest coefficient is compared.
std::vector<TermRecoveryRow> TermRecoveryReport(std::span<const AssumptionTree> runs,
                                                const AssumptionTree& reference);

// Monomial text such as `u[1]*u[1]*v[2]`, or `1` for the constant term.
std::string MonomialText(const Monomial& m, const InputProfile& profile);

// CSV with columns term, coefficient, N, S, D, MaxD; absent values print `-`.
void WriteTermReportCsv(std::ostream& out, const std::vector<TermRecoveryRow>& rows,
                        const InputProfile& profile);

}  // namespace envassume

#endif  // ENVASSUME_TERMS_HPP
