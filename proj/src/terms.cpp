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

#include "envassume/terms.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "envassume/lexer.hpp"

namespace envassume {

std::vector<TermRecoveryRow> TermRecoveryReport(std::span<const AssumptionTree> runs,
                                                const AssumptionTree& reference) {
  std::vector<TreeStats> stats;
  stats.reserve(runs.size());
  for (const AssumptionTree& a : runs) stats.push_back(CountStats(a));

  std::vector<TermRecoveryRow> rows;
  for (const Term& ref : CountStats(reference).terms) {
    TermRecoveryRow row;
    row.reference = ref;
    row.runs = runs.size();
    std::size_t same_sign = 0;
    double total_difference = 0.0;
    double max_difference = 0.0;
    for (const TreeStats& s : stats) {
      std::optional<double> closest;
      for (const Term& t : s.terms) {
        if (t.monomial != ref.monomial) continue;
        if (!closest ||
            std::abs(t.coefficient - ref.coefficient) < std::abs(*closest - ref.coefficient)) {
          closest = t.coefficient;
        }
      }
      if (!closest) continue;
      ++row.found;
      if ((*closest > 0.0) == (ref.coefficient > 0.0)) ++same_sign;
      const double d = std::abs(*closest - ref.coefficient);
      total_difference += d;
      max_difference = std::max(max_difference, d);
    }
    if (row.found > 0) {
      const double n = static_cast<double>(row.found);
      row.same_sign_pct = 100.0 * static_cast<double>(same_sign) / n;
      row.mean_difference = total_difference / n;
      row.max_difference = max_difference;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string MonomialText(const Monomial& m, const InputProfile& profile) {
  if (m.empty()) return "1";
  std::string out;
  for (const auto& [signal, position] : m) {
    if (!out.empty()) out += '*';
    out += profile.inputs()[signal].name + "[" + std::to_string(position) + "]";
  }
  return out;
}

void WriteTermReportCsv(std::ostream& out, const std::vector<TermRecoveryRow>& rows,
                        const InputProfile& profile) {
  auto optional = [](const std::optional<double>& v) {
    return v ? FormatNumber(*v) : std::string("-");
  };
  out << "term,coefficient,N,S,D,MaxD\n";
  for (const TermRecoveryRow& r : rows) {
    out << MonomialText(r.reference.monomial, profile) << ','
        << FormatNumber(r.reference.coefficient) << ',' << r.found << ','
        << optional(r.same_sign_pct) << ',' << optional(r.mean_difference) << ','
        << optional(r.max_difference) << '\n';
  }
}

}  // namespace envassume
