// Copyright (c) 2026 The artopo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "artopo/exploration.h"
#include "artopo/object_model.h"

namespace artopo {

nlohmann::json poseToJson(const Pose& pose);
Pose poseFromJson(const nlohmann::json& j);

nlohmann::json transformToJson(const HomogeneousTransform& transform);
HomogeneousTransform transformFromJson(const nlohmann::json& j);

nlohmann::json objectSpecToJson(const ObjectSpec& spec);
/// Parses and validates; throws std::invalid_argument on schema or
/// invariant violations.
ObjectSpec objectSpecFromJson(const nlohmann::json& j);

nlohmann::json sinusoidToJson(const SinusoidSpec& spec);
SinusoidSpec sinusoidFromJson(const nlohmann::json& j);

ObjectSpec loadObjectSpec(const std::string& path);
void saveObjectSpec(const ObjectSpec& spec, const std::string& path);

/// FNV-1a over the canonical (sorted-key) JSON encoding of the spec.
/// Stable across runs and platforms; identifies a fixture in trial
/// metadata and campaign manifests.
std::uint64_t specHash(const ObjectSpec& spec);
std::string hashHex(std::uint64_t hash);

}  // namespace artopo
