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

#ifndef ENVASSUME_LIBRARY_HPP
#define ENVASSUME_LIBRARY_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "envassume/model.hpp"
#include "envassume/requirement.hpp"
#include "envassume/signals.hpp"

namespace envassume {

// A built-in model whose failure region is known in closed form.
struct PlantedModel {
  std::string name;
  std::string model_text;
  std::string requirement_text;
  // Reference assumption in control-point syntax: the passing region, or a
  // sound part of it when a rel would have to mix positions.
  std::string reference_assumption;
  // Closed-form oracle: whether assignment x violates the requirement.
  std::function<bool(const ControlPointAssignment&)> fails;

  ModelSpec Model() const { return ModelSpec::Load(model_text); }
  Requirement Req() const { return Requirement::Parse(requirement_text); }
};

// threshold, linear, linear-wide, bilinear, disk, integrator, dominant and
// bilinear-1 .. bilinear-5.
std::span<const PlantedModel> PlantedModels();
std::optional<PlantedModel> FindPlantedModel(std::string_view name);

// The five models of the bilinear benchmark suite.
std::vector<PlantedModel> BilinearSuite();

}  // namespace envassume

#endif  // ENVASSUME_LIBRARY_HPP
