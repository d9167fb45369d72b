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

#ifndef ENVASSUME_SIGNALS_HPP
#define ENVASSUME_SIGNALS_HPP

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace envassume {

// Bounded time interval [0, end] sampled every `step` seconds.
class TimeDomain {
 public:
  TimeDomain() = default;
  // Throws Error unless end > 0, step > 0 and end/step is integral.
  TimeDomain(double end, double step);

  double end() const { return end_; }
  double step() const { return step_; }
  std::size_t steps() const { return steps_; }
  std::size_t samples() const { return steps_ + 1; }
  double time(std::size_t k) const { return static_cast<double>(k) * step_; }

  // Index of the first sample whose time is >= t (up to rounding).
  std::size_t CeilIndex(double t) const;
  // Index of the last sample whose time is <= t (up to rounding).
  std::size_t FloorIndex(double t) const;

  friend bool operator==(const TimeDomain&, const TimeDomain&) = default;

 private:
  double end_ = 1.0;
  double step_ = 1.0;
  std::size_t steps_ = 1;
};

class Signal {
 public:
  Signal() = default;
  // Throws Error on a sample count mismatch or a non-finite sample.
  Signal(TimeDomain domain, std::vector<double> samples);

  const TimeDomain& domain() const { return domain_; }
  std::span<const double> samples() const { return samples_; }
  double operator[](std::size_t k) const { return samples_[k]; }
  std::size_t size() const { return samples_.size(); }
  // Value at the sample nearest to t.
  double ValueAt(double t) const;

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  TimeDomain domain_;
  std::vector<double> samples_;
};

// Named signals over one shared time domain, in insertion order.
class SignalBundle {
 public:
  SignalBundle() = default;
  explicit SignalBundle(TimeDomain domain) : domain_(domain) {}

  // Throws Error on a duplicate name or a domain mismatch.
  void Add(std::string name, Signal signal);

  const TimeDomain& domain() const { return domain_; }
  std::size_t size() const { return signals_.size(); }
  bool empty() const { return signals_.empty(); }
  const std::vector<std::string>& names() const { return names_; }
  const Signal& signal(std::size_t i) const { return signals_[i]; }
  const Signal* Find(std::string_view name) const;
  const Signal& Get(std::string_view name) const;  // throws CoverageError

  friend bool operator==(const SignalBundle&, const SignalBundle&) = default;

 private:
  TimeDomain domain_;
  std::vector<std::string> names_;
  std::vector<Signal> signals_;
};

enum class Interpolation { kPiecewiseConstant, kLinear, kPiecewiseCubic };

std::string_view ToString(Interpolation kind);
// Accepts the names printed by ToString plus "constant" and "cubic".
std::optional<Interpolation> ParseInterpolation(std::string_view text);

struct InputSpec {
  std::string name;
  Interpolation interpolation = Interpolation::kPiecewiseConstant;
  double lo = 0.0;
  double hi = 1.0;

  friend bool operator==(const InputSpec&, const InputSpec&) = default;
};

// Admissible input signals: per input an interpolation and value range, plus a
// control-point count shared by all inputs.
class InputProfile {
 public:
  InputProfile() = default;
  // Throws Error on empty inputs, lo > hi, duplicate names or n == 0.
  InputProfile(std::vector<InputSpec> inputs, std::size_t control_points);

  const std::vector<InputSpec>& inputs() const { return inputs_; }
  std::size_t signal_count() const { return inputs_.size(); }
  std::size_t control_points() const { return control_points_; }
  // Number of free values in an assignment: signals x control points.
  std::size_t dimension() const { return inputs_.size() * control_points_; }
  std::optional<std::size_t> IndexOf(std::string_view name) const;
  std::vector<std::string> names() const;

  friend bool operator==(const InputProfile&, const InputProfile&) = default;

 private:
  std::vector<InputSpec> inputs_;
  std::size_t control_points_ = 1;
};

// Values of every control point, signal-major. Positions are 1-based.
class ControlPointAssignment {
 public:
  ControlPointAssignment() = default;
  ControlPointAssignment(std::size_t signals, std::size_t positions,
                         std::vector<double> values);
  ControlPointAssignment(std::size_t signals, std::size_t positions)
      : ControlPointAssignment(signals, positions,
                               std::vector<double>(signals * positions, 0.0)) {}

  // Builds from a (signal name, position) map. Throws CoverageError naming
  // the first missing pair, or Error on a value outside its range.
  static ControlPointAssignment FromMap(
      const InputProfile& profile,
      const std::map<std::pair<std::string, std::size_t>, double>& values);

  std::size_t signals() const { return signals_; }
  std::size_t positions() const { return positions_; }
  double at(std::size_t signal, std::size_t position) const {
    return values_[signal * positions_ + (position - 1)];
  }
  void set(std::size_t signal, std::size_t position, double v) {
    values_[signal * positions_ + (position - 1)] = v;
  }
  std::span<const double> values() const { return values_; }
  std::span<double> mutable_values() { return values_; }

  // True when the shape matches the profile and every value is in range.
  bool FitsProfile(const InputProfile& profile) const;

  friend bool operator==(const ControlPointAssignment&,
                         const ControlPointAssignment&) = default;

 private:
  std::size_t signals_ = 0;
  std::size_t positions_ = 0;
  std::vector<double> values_;
};

// Times of the n control points: [0] for n == 1, else 0, I, ..., (n-1)I with
// I = end / (n-1).
std::vector<double> ControlPointTimes(std::size_t control_points,
                                      const TimeDomain& domain);

// First sample index belonging to each control-point position. Sample k
// belongs to the last position whose start index is <= k.
std::vector<std::size_t> PositionStartSamples(std::size_t control_points,
                                              const TimeDomain& domain);

// Builds one signal per profile input that passes through its control points.
// Throws CoverageError if the assignment shape does not match the profile.
SignalBundle Interpolate(const ControlPointAssignment& assignment,
                         const InputProfile& profile, const TimeDomain& domain);

// CSV with header "time,<name>,..." and one row per sample.
void WriteSignalCsv(std::ostream& out, const SignalBundle& bundle);
// Inverse of WriteSignalCsv; the time column must be uniformly spaced from 0.
SignalBundle ReadSignalCsv(std::istream& in);

}  // namespace envassume

#endif  // ENVASSUME_SIGNALS_HPP
