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

#include <gtest/gtest.h>

#include <sstream>

#include "envassume/errors.hpp"
#include "envassume/rng.hpp"
#include "envassume/signals.hpp"

namespace envassume {
namespace {

InputProfile OneInput(Interpolation kind, std::size_t n, double lo = 0.0, double hi = 1.0) {
  return InputProfile({{"u", kind, lo, hi}}, n);
}

TEST(TimeDomainTest, RejectsNonIntegralSampleCount) {
  EXPECT_THROW(TimeDomain(1.0, 0.3), Error);
  EXPECT_THROW(TimeDomain(0.0, 0.1), Error);
  EXPECT_THROW(TimeDomain(1.0, -0.1), Error);
  const TimeDomain d(1.0, 0.25);
  EXPECT_EQ(d.samples(), 5u);
}

TEST(ControlPointTimesTest, MatchesSpacing) {
  EXPECT_EQ(ControlPointTimes(3, TimeDomain(10.0, 1.0)), (std::vector<double>{0, 5, 10}));
  EXPECT_EQ(ControlPointTimes(1, TimeDomain(1.0, 0.1)), (std::vector<double>{0}));
  EXPECT_EQ(ControlPointTimes(5, TimeDomain(1.0, 0.05)),
            (std::vector<double>{0, 0.25, 0.5, 0.75, 1.0}));
}

TEST(ControlPointTimesTest, StrictlyIncreasingAndSpansDomain) {
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto times = ControlPointTimes(n, TimeDomain(7.0, 0.01));
    EXPECT_DOUBLE_EQ(times.front(), 0.0);
    EXPECT_DOUBLE_EQ(times.back(), 7.0);
    for (std::size_t i = 1; i < times.size(); ++i) EXPECT_LT(times[i - 1], times[i]);
  }
}

TEST(InterpolateTest, SinglePointIsConstant) {
  const TimeDomain d(1.0, 0.1);
  for (auto kind : {Interpolation::kPiecewiseConstant, Interpolation::kLinear,
                    Interpolation::kPiecewiseCubic}) {
    const auto bundle = Interpolate(ControlPointAssignment(1, 1, {0.7}), OneInput(kind, 1), d);
    for (double v : bundle.Get("u").samples()) EXPECT_DOUBLE_EQ(v, 0.7);
  }
}

TEST(InterpolateTest, LinearRamp) {
  const TimeDomain d(10.0, 1.0);
  const auto bundle = Interpolate(ControlPointAssignment(1, 2, {0.0, 10.0}),
                                  OneInput(Interpolation::kLinear, 2, 0, 10), d);
  for (std::size_t k = 0; k <= 10; ++k) EXPECT_DOUBLE_EQ(bundle.Get("u")[k], double(k));
}

TEST(InterpolateTest, PiecewiseConstantHoldsLastPoint) {
  const TimeDomain d(10.0, 1.0);
  const auto bundle = Interpolate(ControlPointAssignment(1, 3, {2.0, 4.0, 0.0}),
                                  OneInput(Interpolation::kPiecewiseConstant, 3, 0, 5), d);
  // Hold-last-point oracle evaluated independently over the sample grid.
  for (std::size_t k = 0; k <= 10; ++k) {
    const double expected = k < 5 ? 2.0 : (k < 10 ? 4.0 : 0.0);
    EXPECT_DOUBLE_EQ(bundle.Get("u")[k], expected) << "k=" << k;
  }
}

TEST(InterpolateTest, ReproducesControlPointsAndStaysInRange) {
  const TimeDomain d(3.0, 0.01);
  Rng rng(11);
  for (auto kind : {Interpolation::kPiecewiseConstant, Interpolation::kLinear,
                    Interpolation::kPiecewiseCubic}) {
    for (std::size_t n = 1; n <= 7; ++n) {
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> v(n);
        for (double& x : v) x = rng.Uniform(-2.0, 3.0);
        const auto profile = OneInput(kind, n, -2.0, 3.0);
        const auto u = Interpolate(ControlPointAssignment(1, n, v), profile, d).Get("u");
        const auto times = ControlPointTimes(n, d);
        for (std::size_t j = 0; j < n; ++j) EXPECT_DOUBLE_EQ(u.ValueAt(times[j]), v[j]);
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        for (double s : u.samples()) {
          if (kind == Interpolation::kPiecewiseCubic) {
            EXPECT_GE(s, -2.0);
            EXPECT_LE(s, 3.0);
          } else {
            EXPECT_GE(s, *lo);
            EXPECT_LE(s, *hi);
          }
        }
      }
    }
  }
}

TEST(InterpolateTest, MissingEntryNamesTheGap) {
  const InputProfile profile({{"a", Interpolation::kLinear, 0, 1},
                              {"b", Interpolation::kLinear, 0, 1}},
                             2);
  try {
    ControlPointAssignment::FromMap(profile, {{{"a", 1}, 0.1}, {{"a", 2}, 0.2}, {{"b", 1}, 0.3}});
    FAIL();
  } catch (const CoverageError& e) {
    EXPECT_NE(std::string(e.what()).find("b"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
  }
  EXPECT_THROW(Interpolate(ControlPointAssignment(1, 2), profile, TimeDomain(1, 0.1)),
               CoverageError);
}

TEST(SignalCsvTest, RoundTrip) {
  const TimeDomain d(1.0, 0.25);
  SignalBundle b(d);
  b.Add("x", Signal(d, {0.1, 0.2, 0.3, 0.4, 1e-7}));
  b.Add("y", Signal(d, {-1, 2, -3, 4, -5}));
  std::stringstream ss;
  WriteSignalCsv(ss, b);
  EXPECT_EQ(ReadSignalCsv(ss), b);
}

TEST(SignalBundleTest, RejectsDuplicatesAndDomainMismatch) {
  const TimeDomain d(1.0, 0.5);
  SignalBundle b(d);
  b.Add("x", Signal(d, {1, 2, 3}));
  EXPECT_THROW(b.Add("x", Signal(d, {1, 2, 3})), Error);
  const TimeDomain other(2.0, 1.0);
  EXPECT_THROW(b.Add("z", Signal(other, {1, 2, 3})), Error);
  EXPECT_THROW(Signal(d, {1, 2}), Error);
}

}  // namespace
}  // namespace envassume
