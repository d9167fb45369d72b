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

#include "envassume/signals.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "envassume/errors.hpp"
#include "envassume/lexer.hpp"

namespace envassume {

namespace {

constexpr double kGridTolerance = 1e-9;

// Fritsch-Carlson slopes for a monotone piecewise cubic Hermite interpolant.
std::vector<double> MonotoneSlopes(const std::vector<double>& x,
                                   const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    delta[i] = (y[i + 1] - y[i]) / h[i];
  }
  if (n == 2) {
    d[0] = d[1] = delta[0];
    return d;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      d[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0.0) {
      s = 0.0;
    } else if (d0 * d1 <= 0.0 && std::abs(s) > std::abs(3.0 * d0)) {
      s = 3.0 * d0;
    }
    return s;
  };
  d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

TimeDomain::TimeDomain(double end, double step) : end_(end), step_(step) {
  if (!(end > 0.0) || !std::isfinite(end)) throw Error("time domain end must be > 0");
  if (!(step > 0.0) || !std::isfinite(step)) throw Error("time step must be > 0");
  const double ratio = end / step;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > kGridTolerance * std::max(1.0, ratio)) {
    throw Error("time step " + FormatNumber(step) + " does not divide end " +
                FormatNumber(end));
  }
  steps_ = static_cast<std::size_t>(rounded);
}

std::size_t TimeDomain::CeilIndex(double t) const {
  const double k = std::ceil(t / step_ - kGridTolerance);
  if (k <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(k), steps_ + 1);
}

std::size_t TimeDomain::FloorIndex(double t) const {
  const double k = std::floor(t / step_ + kGridTolerance);
  if (k <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(k), steps_);
}

Signal::Signal(TimeDomain domain, std::vector<double> samples)
    : domain_(domain), samples_(std::move(samples)) {
  if (samples_.size() != domain_.samples()) {
    throw Error("signal has " + std::to_string(samples_.size()) +
                " samples, domain needs " + std::to_string(domain_.samples()));
  }
  for (double v : samples_) {
    if (!std::isfinite(v)) throw Error("signal sample is not finite");
  }
}

double Signal::ValueAt(double t) const {
  const double k = std::round(t / domain_.step());
  const auto idx = static_cast<std::size_t>(
      std::clamp(k, 0.0, static_cast<double>(domain_.steps())));
  return samples_[idx];
}

void SignalBundle::Add(std::string name, Signal signal) {
  if (signals_.empty() && names_.empty()) {
    domain_ = signal.domain();
  } else if (!(signal.domain() == domain_)) {
    throw Error("signal '" + name + "' has a different time domain");
  }
  if (Find(name) != nullptr) throw Error("duplicate signal '" + name + "'");
  names_.push_back(std::move(name));
  signals_.push_back(std::move(signal));
}

const Signal* SignalBundle::Find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return &signals_[i];
  }
  return nullptr;
}

const Signal& SignalBundle::Get(std::string_view name) const {
  const Signal* s = Find(name);
  if (s == nullptr) throw CoverageError("missing signal '" + std::string(name) + "'");
  return *s;
}

std::string_view ToString(Interpolation kind) {
  switch (kind) {
    case Interpolation::kPiecewiseConstant:
      return "piecewise-constant";
    case Interpolation::kLinear:
      return "linear";
    case Interpolation::kPiecewiseCubic:
      return "piecewise-cubic";
  }
  return "?";
}

std::optional<Interpolation> ParseInterpolation(std::string_view text) {
  if (text == "piecewise-constant" || text == "constant" || text == "pchip_const" ||
      text == "piecewise_constant")
    return Interpolation::kPiecewiseConstant;
  if (text == "linear") return Interpolation::kLinear;
  if (text == "piecewise-cubic" || text == "cubic" || text == "piecewise_cubic")
    return Interpolation::kPiecewiseCubic;
  return std::nullopt;
}

InputProfile::InputProfile(std::vector<InputSpec> inputs, std::size_t control_points)
    : inputs_(std::move(inputs)), control_points_(control_points) {
  if (inputs_.empty()) throw Error("input profile has no inputs");
  if (control_points_ == 0) throw Error("control point count must be >= 1");
  for (std::size_t i = 0; i < inputs_.size(); ++i) {
    const auto& in = inputs_[i];
    if (!(in.lo <= in.hi) || !std::isfinite(in.lo) || !std::isfinite(in.hi)) {
      throw Error("input '" + in.name + "' has an empty or non-finite range");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (inputs_[j].name == in.name) throw Error("duplicate input '" + in.name + "'");
    }
  }
}

std::optional<std::size_t> InputProfile::IndexOf(std::string_view name) const {
  for (std::size_t i = 0; i < inputs_.size(); ++i) {
    if (inputs_[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<std::string> InputProfile::names() const {
  std::vector<std::string> out;
  out.reserve(inputs_.size());
  for (const auto& in : inputs_) out.push_back(in.name);
  return out;
}

ControlPointAssignment::ControlPointAssignment(std::size_t signals,
                                               std::size_t positions,
                                               std::vector<double> values)
    : signals_(signals), positions_(positions), values_(std::move(values)) {
  if (values_.size() != signals_ * positions_) {
    throw CoverageError("assignment has " + std::to_string(values_.size()) +
                        " values, expected " + std::to_string(signals_ * positions_));
  }
}

ControlPointAssignment ControlPointAssignment::FromMap(
    const InputProfile& profile,
    const std::map<std::pair<std::string, std::size_t>, double>& values) {
  ControlPointAssignment out(profile.signal_count(), profile.control_points());
  for (std::size_t s = 0; s < profile.signal_count(); ++s) {
    const auto& in = profile.inputs()[s];
    for (std::size_t p = 1; p <= profile.control_points(); ++p) {
      auto it = values.find({in.name, p});
      if (it == values.end()) {
        throw CoverageError("assignment has no value for control point " + in.name +
                            "[" + std::to_string(p) + "]");
      }
      if (it->second < in.lo || it->second > in.hi) {
        throw Error("control point " + in.name + "[" + std::to_string(p) +
                    "] = " + FormatNumber(it->second) + " is outside [" +
                    FormatNumber(in.lo) + ", " + FormatNumber(in.hi) + "]");
      }
      out.set(s, p, it->second);
    }
  }
  for (const auto& [key, v] : values) {
    if (!profile.IndexOf(key.first) || key.second == 0 ||
        key.second > profile.control_points()) {
      throw CoverageError("assignment names unknown control point " + key.first + "[" +
                          std::to_string(key.second) + "]");
    }
  }
  return out;
}

bool ControlPointAssignment::FitsProfile(const InputProfile& profile) const {
  if (signals_ != profile.signal_count() || positions_ != profile.control_points())
    return false;
  for (std::size_t s = 0; s < signals_; ++s) {
    const auto& in = profile.inputs()[s];
    for (std::size_t p = 1; p <= positions_; ++p) {
      const double v = at(s, p);
      if (!(v >= in.lo && v <= in.hi)) return false;
    }
  }
  return true;
}

std::vector<double> ControlPointTimes(std::size_t control_points,
                                      const TimeDomain& domain) {
  if (control_points == 0) throw Error("control point count must be >= 1");
  if (control_points == 1) return {0.0};
  std::vector<double> out(control_points);
  const double interval = domain.end() / static_cast<double>(control_points - 1);
  for (std::size_t i = 0; i < control_points; ++i) {
    out[i] = static_cast<double>(i) * interval;
  }
  out.back() = domain.end();
  return out;
}

std::vector<std::size_t> PositionStartSamples(std::size_t control_points,
                                              const TimeDomain& domain) {
  const auto times = ControlPointTimes(control_points, domain);
  std::vector<std::size_t> out(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) out[i] = domain.CeilIndex(times[i]);
  return out;
}

SignalBundle Interpolate(const ControlPointAssignment& assignment,
                         const InputProfile& profile, const TimeDomain& domain) {
  const std::size_t n = profile.control_points();
  if (assignment.signals() != profile.signal_count() || assignment.positions() != n) {
    throw CoverageError("assignment covers " + std::to_string(assignment.signals()) +
                        "x" + std::to_string(assignment.positions()) +
                        " control points, profile needs " +
                        std::to_string(profile.signal_count()) + "x" + std::to_string(n));
  }
  const auto times = ControlPointTimes(n, domain);
  const auto starts = PositionStartSamples(n, domain);
  const std::size_t samples = domain.samples();

  SignalBundle out(domain);
  for (std::size_t s = 0; s < profile.signal_count(); ++s) {
    const InputSpec& spec = profile.inputs()[s];
    std::vector<double> cp(n);
    for (std::size_t p = 0; p < n; ++p) cp[p] = assignment.at(s, p + 1);
    std::vector<double> values(samples, cp[0]);

    if (n > 1) {
      std::vector<double> slopes;
      if (spec.interpolation == Interpolation::kPiecewiseCubic) {
        slopes = MonotoneSlopes(times, cp);
      }
      std::size_t seg = 0;
      for (std::size_t k = 0; k < samples; ++k) {
        while (seg + 1 < n && starts[seg + 1] <= k) ++seg;
        if (spec.interpolation == Interpolation::kPiecewiseConstant || seg + 1 >= n ||
            k == starts[seg]) {
          values[k] = cp[seg];
          continue;
        }
        const double t = domain.time(k);
        const double h = times[seg + 1] - times[seg];
        const double w = std::clamp((t - times[seg]) / h, 0.0, 1.0);
        const double a = cp[seg];
        const double b = cp[seg + 1];
        double v;
        if (spec.interpolation == Interpolation::kLinear) {
          v = (1.0 - w) * a + w * b;
          v = std::clamp(v, std::min(a, b), std::max(a, b));
        } else {
          const double w2 = w * w;
          const double w3 = w2 * w;
          v = (2 * w3 - 3 * w2 + 1) * a + (w3 - 2 * w2 + w) * h * slopes[seg] +
              (-2 * w3 + 3 * w2) * b + (w3 - w2) * h * slopes[seg + 1];
        }
        values[k] = std::clamp(v, spec.lo, spec.hi);
      }
    }
    out.Add(spec.name, Signal(domain, std::move(values)));
  }
  return out;
}

void WriteSignalCsv(std::ostream& out, const SignalBundle& bundle) {
  out << "time";
  for (const auto& name : bundle.names()) out << ',' << name;
  out << '\n';
  const auto& domain = bundle.domain();
  for (std::size_t k = 0; k < domain.samples(); ++k) {
    out << FormatNumber(domain.time(k));
    for (std::size_t i = 0; i < bundle.size(); ++i) {
      out << ',' << FormatNumber(bundle.signal(i)[k]);
    }
    out << '\n';
  }
}

SignalBundle ReadSignalCsv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError("empty signal CSV", 1, 1);
  const auto header = SplitCsvLine(line);
  if (header.empty() || header[0] != "time") {
    throw ParseError("signal CSV header must start with 'time'", 1, 1);
  }
  std::vector<double> times;
  std::vector<std::vector<double>> columns(header.size() - 1);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = SplitCsvLine(line);
    if (cells.size() != header.size()) {
      throw ParseError("row has " + std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(header.size()),
                       line_no, 1);
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double v = 0.0;
      try {
        std::size_t used = 0;
        v = std::stod(cells[c], &used);
        if (used != cells[c].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError("malformed number '" + cells[c] + "'", line_no, c + 1);
      }
      if (c == 0) {
        times.push_back(v);
      } else {
        columns[c - 1].push_back(v);
      }
    }
  }
  if (times.size() < 2) throw ParseError("signal CSV needs at least two rows", line_no, 1);
  if (times[0] != 0.0) throw ParseError("signal CSV must start at time 0", 2, 1);
  const double step = times[1] - times[0];
  TimeDomain domain(times.back(), step);
  if (domain.samples() != times.size()) {
    throw ParseError("time column is not uniformly spaced", 2, 1);
  }
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (std::abs(times[k] - domain.time(k)) > 1e-6 * std::max(1.0, domain.end())) {
      throw ParseError("time column is not uniformly spaced", k + 2, 1);
    }
  }
  SignalBundle bundle(domain);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    bundle.Add(header[c + 1], Signal(domain, std::move(columns[c])));
  }
  return bundle;
}

}  // namespace envassume
