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

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "artopo/spatial.h"

namespace artopo {

/// Wrench components in file order: forces first, then moments.
inline constexpr std::array<const char*, 6> kWrenchComponentNames = {
    "fx", "fy", "fz", "mx", "my", "mz"};

/// Bit mask over the six wrench components (bit k = component k active).
using ComponentMask = std::uint8_t;

ComponentMask componentMaskFromNames(const std::vector<std::string>& names);
std::vector<std::string> componentMaskNames(ComponentMask mask);

/// Random sinusoidal exploration wrench: component k is
/// amplitude[k] * sin(2 pi frequency[k] t). Inactive components carry zero
/// amplitude and frequency.
struct SinusoidSpec {
  Vec6 amplitude = Vec6::Zero();
  Vec6 frequency = Vec6::Zero();
  ComponentMask active = 0;

  /// Throws std::invalid_argument when amplitudes exceed 0.2 or
  /// frequencies fall outside [0, 0.3].
  void validate() const;
};

/// Draws amplitudes from U[-amplitudeMax, amplitudeMax] and frequencies
/// from U[frequencyLo, frequencyHi] for every active component, in fixed
/// component order. The frequency floor defaults above zero so sampled
/// signals are never identically zero; pass 0 for strict range
/// replication. Throws std::invalid_argument on an empty mask or an
/// invalid range.
SinusoidSpec sampleSinusoid(std::mt19937_64& rng, ComponentMask mask,
                            double amplitudeMax = 0.2,
                            double frequencyLo = 0.05,
                            double frequencyHi = 0.3);

/// Signal value at time t.
SpatialForce evaluate(const SinusoidSpec& spec, double t);

}  // namespace artopo
