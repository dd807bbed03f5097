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

#include "artopo/exploration.h"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace artopo {

namespace {
// Uniform double from raw engine bits; keeps sampled campaigns identical
// across standard library implementations.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = (rng() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}
}  // namespace

ComponentMask componentMaskFromNames(const std::vector<std::string>& names) {
  ComponentMask mask = 0;
  for (const std::string& name : names) {
    bool found = false;
    for (size_t k = 0; k < kWrenchComponentNames.size(); ++k) {
      if (name == kWrenchComponentNames[k]) {
        mask |= ComponentMask(1u << k);
        found = true;
        break;
      }
    }
    if (!found) {
      throw std::invalid_argument("unknown wrench component '" + name + "'");
    }
  }
  return mask;
}

std::vector<std::string> componentMaskNames(ComponentMask mask) {
  std::vector<std::string> names;
  for (size_t k = 0; k < kWrenchComponentNames.size(); ++k) {
    if (mask & (1u << k)) {
      names.emplace_back(kWrenchComponentNames[k]);
    }
  }
  return names;
}

void SinusoidSpec::validate() const {
  for (int k = 0; k < 6; ++k) {
    if (std::abs(amplitude[k]) > 0.2 + 1e-12) {
      throw std::invalid_argument("sinusoid amplitude exceeds 0.2");
    }
    if (frequency[k] < 0.0 || frequency[k] > 0.3 + 1e-12) {
      throw std::invalid_argument("sinusoid frequency outside [0, 0.3]");
    }
  }
}

SinusoidSpec sampleSinusoid(std::mt19937_64& rng, ComponentMask mask,
                            double amplitudeMax, double frequencyLo,
                            double frequencyHi) {
  if (mask == 0) {
    throw std::invalid_argument("exploration mask selects no components");
  }
  if (amplitudeMax <= 0.0 || frequencyLo < 0.0 || frequencyHi < frequencyLo) {
    throw std::invalid_argument("invalid sinusoid sampling ranges");
  }
  SinusoidSpec spec;
  spec.active = mask;
  for (int k = 0; k < 6; ++k) {
    if (mask & (1u << k)) {
      spec.amplitude[k] = uniform(rng, -amplitudeMax, amplitudeMax);
      spec.frequency[k] = uniform(rng, frequencyLo, frequencyHi);
    }
  }
  spec.validate();
  return spec;
}

SpatialForce evaluate(const SinusoidSpec& spec, double t) {
  Vec6 value = Vec6::Zero();
  for (int k = 0; k < 6; ++k) {
    if (spec.active & (1u << k)) {
      value[k] = spec.amplitude[k] * std::sin(2.0 * M_PI * spec.frequency[k] * t);
    }
  }
  return SpatialForce::fromVector(value);
}

}  // namespace artopo
