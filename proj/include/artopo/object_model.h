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
#include <vector>

#include "artopo/spatial.h"

namespace artopo {

/// Candidate articulation model of one joint. The numeric order (R before
/// P) defines the lexicographic order of topologies and the deterministic
/// argmin tie-break.
enum class JointModel { Revolute = 0, Prismatic = 1 };

char jointModelLabel(JointModel model);
JointModel jointModelFromLabel(char label);

/// One joint of the serial chain. The joint frame is placed at
/// `parentFrame` in the parent link and at `childFrame` in the child link;
/// both placements coincide at q = 0. `axis` is a unit vector in the joint
/// frame shared by every candidate model of this joint.
struct JointSpec {
  int index = 1;
  HomogeneousTransform parentFrame;
  HomogeneousTransform childFrame;
  Vec3 axis = Vec3::UnitZ();
  double limitLo = 0.0;
  double limitHi = 1.0;
  double damping = 0.0;
  double staticFriction = 0.0;
};

struct LinkSpec {
  std::string name;
  SpatialInertia inertia;
  bool isHandle = false;
};

/// Assignment of one articulation model per joint; entry i belongs to
/// joint i+1, which keeps the indices {1..n} valid by construction.
struct Topology {
  std::vector<JointModel> models;

  std::string label() const;
  bool operator==(const Topology& rhs) const { return models == rhs.models; }
  bool operator!=(const Topology& rhs) const { return !(*this == rhs); }
  bool operator<(const Topology& rhs) const { return models < rhs.models; }
};

Topology topologyFromLabel(const std::string& label);

/// Serial-chain articulated object. Link 0 is the anchored-side terminal;
/// joint i connects link i-1 to link i. `anchoredTerminal` names the
/// anchored link (must be the first link) or is empty for a free-floating
/// body. `basePose` is the inertial-frame pose of link 0.
struct ObjectSpec {
  std::vector<LinkSpec> links;
  std::vector<JointSpec> joints;
  std::string anchoredTerminal;
  Pose basePose;

  int jointCount() const { return static_cast<int>(joints.size()); }
  bool anchored() const { return !anchoredTerminal.empty(); }
  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;
};

/// Motion subspace of one joint model in the joint frame, linear-first:
/// Revolute -> (0; axis), Prismatic -> (axis; 0). Throws
/// std::invalid_argument for a non-unit axis.
SpatialMotion motionSubspace(JointModel model, const Vec3& axis);

/// The same subspace pushed into the child link frame through childFrame,
/// so that the child twist relative to its parent is S * qdot in child
/// coordinates.
SpatialMotion jointSubspaceInChild(const JointSpec& joint, JointModel model);

/// Parent-link-to-child-link transform at joint position q:
/// parentFrame * jointMotion(q) * childFrame^-1.
HomogeneousTransform jointTransform(const JointSpec& joint, JointModel model,
                                    double q);

/// All 2^n candidate topologies in lexicographic order (R < P, joint 1
/// varies slowest); n = 0 yields the single empty topology of a jointless
/// free body. Throws std::invalid_argument unless 0 <= n <= 20.
std::vector<Topology> enumerateTopologies(int jointCount);

/// Inertial-frame poses of every link at joint positions q. Throws
/// std::out_of_range when a position violates its joint limits.
std::vector<Pose> forwardKinematics(const ObjectSpec& spec,
                                    const Topology& topology,
                                    const std::vector<double>& q);

/// Recovers the joint position from a parent/child pose pair by projecting
/// the relative transform onto the hypothesized model: the axis component
/// of the rotation log for revolute, of the joint-frame translation for
/// prismatic.
double projectJointPosition(const Pose& parentPose, const Pose& childPose,
                            const JointSpec& joint, JointModel model);

}  // namespace artopo
