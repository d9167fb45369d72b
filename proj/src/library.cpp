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

#include "envassume/library.hpp"

#include <algorithm>

namespace envassume {

namespace {

// Static model: one control point per input, horizon 1 sampled at 0, 0.5, 1.
std::string StaticModel(const std::string& name, const std::string& inputs,
                        const std::string& output) {
  return "model " + name + "\nhorizon 1\nstep 0.5\ncontrol_points 1\ninputs:\n" + inputs +
         "outputs:\n  y = " + output + "\n";
}

double U(const ControlPointAssignment& x, std::size_t signal, std::size_t position = 1) {
  return x.at(signal, position);
}

std::vector<PlantedModel> Build() {
  std::vector<PlantedModel> models;
  const std::string unit2 = "  u1 in [0, 1]\n  u2 in [0, 1]\n";
  const std::string always = "always[0,1] ";

  models.push_back({"threshold", StaticModel("threshold", "  u in [0, 1]\n", "u"),
                    always + "y <= 0.5", "u[1] <= 0.5",
                    [](const ControlPointAssignment& x) { return U(x, 0) > 0.5; }});
  models.push_back({"linear", StaticModel("linear", unit2, "u1 + u2"), always + "y <= 1",
                    "u1[1] + u2[1] <= 1",
                    [](const ControlPointAssignment& x) { return U(x, 0) + U(x, 1) > 1.0; }});
  models.push_back({"bilinear", StaticModel("bilinear", unit2, "u1 * u2"), always + "y <= 0.25",
                    "u1[1] * u2[1] <= 0.25",
                    [](const ControlPointAssignment& x) { return U(x, 0) * U(x, 1) > 0.25; }});
  models.push_back({"linear-wide",
                    StaticModel("linear_wide", "  u1 in [0, 100]\n  u2 in [0, 100]\n",
                                "2 * u1 + u2"),
                    always + "y <= 150", "2 * u1[1] + u2[1] <= 150",
                    [](const ControlPointAssignment& x) {
                      return 2.0 * U(x, 0) + U(x, 1) > 150.0;
                    }});
  models.push_back(
      {"disk", StaticModel("disk", "  u1 in [-1, 1]\n  u2 in [-1, 1]\n", "u1 * u1 + u2 * u2"),
       always + "y <= 0.5", "u1[1] * u1[1] + u2[1] * u2[1] <= 0.5",
       [](const ControlPointAssignment& x) {
         return U(x, 0) * U(x, 0) + U(x, 1) * U(x, 1) > 0.5;
       }});
  // Two piecewise-constant control points: u holds u[1] on [0, 1) and u[2] at
  // t = 1, so acc peaks at max(u[1], u[1] + 0.25 u[2]) for u[1] >= 0.
  models.push_back({"integrator",
                    "model integrator\nhorizon 1\nstep 0.25\ncontrol_points 2\ninputs:\n"
                    "  u in [-1, 1] piecewise-constant\nstates:\n  acc = 0\nupdate:\n"
                    "  acc = prev(acc) + dt * u\noutputs:\n  y = acc\n",
                    always + "y <= 0.5", "u[1] <= 0.25",
                    [](const ControlPointAssignment& x) {
                      return U(x, 0, 1) + 0.25 * std::max(U(x, 0, 2), 0.0) > 0.5;
                    }});
  models.push_back(
      {"dominant",
       StaticModel("dominant", "  u1 in [0, 1]\n  u2 in [0, 1]\n  u3 in [0, 1]\n",
                   "10 * u1 + 0.5 * u2 + 0.3 * u3"),
       always + "y <= 5", "10 * u1[1] + 0.5 * u2[1] + 0.3 * u3[1] <= 5",
       [](const ControlPointAssignment& x) {
         return 10.0 * U(x, 0) + 0.5 * U(x, 1) + 0.3 * U(x, 2) > 5.0;
       }});

  models.push_back({"bilinear-1", StaticModel("bilinear_1", unit2, "u1 * u2"),
                    always + "y <= 0.2", "u1[1] * u2[1] <= 0.2",
                    [](const ControlPointAssignment& x) { return U(x, 0) * U(x, 1) > 0.2; }});
  models.push_back({"bilinear-2", StaticModel("bilinear_2", unit2, "u1 * (1 - u2)"),
                    always + "y <= 0.3", "u1[1] - u1[1] * u2[1] <= 0.3",
                    [](const ControlPointAssignment& x) {
                      return U(x, 0) * (1.0 - U(x, 1)) > 0.3;
                    }});
  models.push_back({"bilinear-3", StaticModel("bilinear_3", unit2, "u1 * u2"),
                    always + "y >= 0.15", "u1[1] * u2[1] >= 0.15",
                    [](const ControlPointAssignment& x) { return U(x, 0) * U(x, 1) < 0.15; }});
  models.push_back({"bilinear-4", StaticModel("bilinear_4", unit2, "u1 * u2 + 0.5 * u1"),
                    always + "y <= 0.6", "u1[1] * u2[1] + 0.5 * u1[1] <= 0.6",
                    [](const ControlPointAssignment& x) {
                      return U(x, 0) * U(x, 1) + 0.5 * U(x, 0) > 0.6;
                    }});
  models.push_back({"bilinear-5",
                    StaticModel("bilinear_5", "  u1 in [0, 2]\n  u2 in [0, 1]\n", "u1 * u2"),
                    always + "y <= 0.5", "u1[1] * u2[1] <= 0.5",
                    [](const ControlPointAssignment& x) { return U(x, 0) * U(x, 1) > 0.5; }});
  return models;
}

}  // namespace

std::span<const PlantedModel> PlantedModels() {
  static const std::vector<PlantedModel> kModels = Build();
  return kModels;
}

std::optional<PlantedModel> FindPlantedModel(std::string_view name) {
  for (const PlantedModel& m : PlantedModels()) {
    if (m.name == name) return m;
  }
  return std::nullopt;
}

std::vector<PlantedModel> BilinearSuite() {
  std::vector<PlantedModel> out;
  for (const PlantedModel& m : PlantedModels()) {
    if (m.name.rfind("bilinear-", 0) == 0) out.push_back(m);
  }
  return out;
}

}  // namespace envassume
