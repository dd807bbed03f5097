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
#include <stdexcept>
#include <utility>
#include <vector>

#include "artopo/exploration.h"
#include "artopo/object_model.h"
#include "artopo/trial_store.h"

namespace artopo {

struct SimConfig {
  double dt = 0.001;
  Vec3 gravityAccel = Vec3(0.0, 0.0, -9.81);
  double duration = 5.0;
  std::uint64_t seed = 0;
  /// Joint-speed magnitude above which a sample is flagged `moving`.
  double motionThreshold = 1e-5;
};

struct JointState {
  double q = 0.0;
  double qdot = 0.0;
};

struct SimState {
  double t = 0.0;
  std::vector<JointState> jointStates;
  /// Exploration wrench currently applied at the free terminal link,
  /// expressed in that link's body frame.
  SpatialForce appliedWrench;
};

/// Numerical blow-up during integration, naming the offending step.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(std::size_t step, double t);
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// Advances one fixed step of the joint-space dynamics
/// M(q) qddot = tau_applied - tau_damping - tau_friction - bias
/// under gravity and the given external wrench at the free terminal link
/// (its body frame), with Coulomb stiction and hard joint limits.
/// Semi-implicit Euler. Throws DivergenceError on blow-up.
SimState generalizedDynamicsStep(const ObjectSpec& spec,
                                 const Topology& topology,
                                 const SimState& state,
                                 const SpatialForce& externalWrench,
                                 const SimConfig& cfg);

/// Wrenches acting ON the object through its two terminal links, each in
/// its own link frame: (anchored reaction, applied exploration wrench).
/// The reaction is the Newton-Euler constraint wrench for the motion the
/// dynamics would realize at this state, so it supports the full weight in
/// statics and closes the momentum balance while moving.
std::pair<SpatialForce, SpatialForce> measuredTerminalWrenches(
    const ObjectSpec& spec, const Topology& topology, const SimState& state,
    const SimConfig& cfg);

/// Total kinetic energy of the chain at a state.
double kineticEnergy(const ObjectSpec& spec, const Topology& topology,
                     const SimState& state);

/// Inertial-frame spatial momentum of the whole chain at a state, from
/// the simulator's exact link twists.
SpatialForce systemMomentum(const ObjectSpec& spec, const Topology& topology,
                            const SimState& state);

/// Runs duration/dt steps from rest (or from initialQ) under the
/// exploration signal, recording one pre-step sample per step: time, all
/// link poses, both terminal wrenches, and the moving flag.
TrialRecord runTrial(const ObjectSpec& spec, const Topology& topology,
                     const SinusoidSpec& signal, const SimConfig& cfg,
                     const std::vector<double>& initialQ = {});

}  // namespace artopo
