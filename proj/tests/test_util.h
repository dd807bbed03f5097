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

#include "artopo/object_model.h"
#include "artopo/spatial.h"

namespace artopo {
namespace testutil {

inline HomogeneousTransform translation(double x, double y, double z) {
  HomogeneousTransform h;
  h.translation = Vec3(x, y, z);
  return h;
}

/// Two 1 kg links joined by one joint whose frame sits 0.3 m along the
/// parent x axis and 0.15 m behind the child origin, axis z, wide limits.
/// Small hand-checkable chain for kinematics and dynamics tests.
inline ObjectSpec twoLinkSpec(double damping = 0.0, double friction = 0.0) {
  ObjectSpec spec;
  const Mat3 boxInertia = 0.01 * Mat3::Identity();
  spec.links.push_back(
      {"base", SpatialInertia::fromComInertia(1.0, Vec3(0.15, 0, 0), boxInertia),
       false});
  spec.links.push_back(
      {"tip", SpatialInertia::fromComInertia(1.0, Vec3(0.15, 0, 0), boxInertia),
       false});
  JointSpec joint;
  joint.index = 1;
  joint.parentFrame = translation(0.3, 0, 0);
  joint.childFrame = translation(-0.15, 0, 0);
  joint.axis = Vec3::UnitZ();
  joint.limitLo = -10.0;
  joint.limitHi = 10.0;
  joint.damping = damping;
  joint.staticFriction = friction;
  spec.joints.push_back(joint);
  spec.anchoredTerminal = "base";
  return spec;
}

}  // namespace testutil
}  // namespace artopo
