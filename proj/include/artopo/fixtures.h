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

#include <string>

#include "artopo/exploration.h"
#include "artopo/object_model.h"
#include "artopo/trial_store.h"

namespace artopo {

/// A ready-to-simulate object plus the wrench components that do work on
/// its joints (motion direction) and the components its motion subspace
/// annihilates (constrained direction).
struct Fixture {
  std::string name;
  ObjectSpec object;
  Topology trueTopology;
  ComponentMask motionMask = 0;
  ComponentMask constrainedMask = 0;
  /// Campaign start configuration; mid-range so one-sided limits do not
  /// swallow half of the first oscillation.
  std::vector<double> initialQ;
};

/// Rotational inertia of a uniform box about its center.
Mat3 boxInertia(double mass, double lx, double ly, double lz);

/// Two 1 kg 0.30 x 0.10 x 0.05 m boxes hinged end to end about z,
/// range [0 deg, 95 deg], damping 0.1, static friction 0.1. The hinge
/// moment and tangential force do work; a radial force does not.
Fixture revoluteDemo();

/// Same boxes joined by a slider along x with range [0, 0.15] m,
/// damping 0.1, static friction 0.1. The axial force does work; the
/// tangential force and hinge moment do not.
Fixture prismaticDemo();

/// Three-link frictionless chain with joint 1 about/along z and joint 2
/// about/along y, simulated under the given true topology; used for the
/// 2^n brute-force oracle. Zero-gravity excitation drives all four
/// candidate joint pairs.
Fixture syntheticChain(const Topology& truth);

/// Analytic trial of one free (unanchored) link of the given mass under
/// the force A sin(2 pi f t) along x in zero gravity: closed-form
/// velocity (A / (2 pi f m)) (1 - cos) and position, identity
/// orientation throughout. Exercises the momentum theorem without the
/// simulator in the loop.
TrialRecord freeBodyTrial(double amplitude, double frequency, double mass,
                          double duration, double dt);

/// fixture/v1 JSON round-trip for custom fixtures and the shipped demo
/// fixture files.
Fixture loadFixture(const std::string& path);
void saveFixture(const Fixture& fixture, const std::string& path);

}  // namespace artopo
