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

#include "artopo/object_model.h"

#include <cmath>
#include <stdexcept>

namespace artopo {

namespace {
constexpr double kAxisNormTolerance = 1e-9;
constexpr double kHandleMassCeiling = 1e-6;

void requireUnitAxis(const Vec3& axis) {
  if (std::abs(axis.norm() - 1.0) > kAxisNormTolerance) {
    throw std::invalid_argument("joint axis must be unit length");
  }
}
}  // namespace

char jointModelLabel(JointModel model) {
  return model == JointModel::Revolute ? 'R' : 'P';
}

JointModel jointModelFromLabel(char label) {
  switch (label) {
    case 'R':
      return JointModel::Revolute;
    case 'P':
      return JointModel::Prismatic;
    default:
      throw std::invalid_argument(std::string("unknown joint model label '") +
                                  label + "'");
  }
}

std::string Topology::label() const {
  std::string out;
  out.reserve(models.size());
  for (const JointModel model : models) {
    out.push_back(jointModelLabel(model));
  }
  return out;
}

Topology topologyFromLabel(const std::string& label) {
  Topology topology;
  topology.models.reserve(label.size());
  for (const char c : label) {
    topology.models.push_back(jointModelFromLabel(c));
  }
  return topology;
}

void ObjectSpec::validate() const {
  if (links.empty()) {
    throw std::invalid_argument("object needs at least one link");
  }
  if (joints.size() + 1 != links.size()) {
    throw std::invalid_argument(
        "serial chain needs exactly one joint between consecutive links");
  }
  for (size_t i = 0; i < joints.size(); ++i) {
    const JointSpec& joint = joints[i];
    if (joint.index != static_cast<int>(i) + 1) {
      throw std::invalid_argument("joint indices must be 1..n in order");
    }
    requireUnitAxis(joint.axis);
    if (!(joint.limitLo < joint.limitHi)) {
      throw std::invalid_argument("joint limits must satisfy lo < hi");
    }
    if (joint.damping < 0.0 || joint.staticFriction < 0.0) {
      throw std::invalid_argument("damping and friction must be nonnegative");
    }
  }
  for (const LinkSpec& link : links) {
    if (link.name.empty()) {
      throw std::invalid_argument("links need nonempty names");
    }
    if (link.isHandle && link.inertia.mass() > kHandleMassCeiling) {
      throw std::invalid_argument("handle links must be effectively massless");
    }
  }
  for (size_t i = 0; i < links.size(); ++i) {
    for (size_t j = i + 1; j < links.size(); ++j) {
      if (links[i].name == links[j].name) {
        throw std::invalid_argument("duplicate link name " + links[i].name);
      }
    }
  }
  if (!anchoredTerminal.empty() && anchoredTerminal != links.front().name) {
    throw std::invalid_argument(
        "anchoredTerminal must name the first link; reorder the chain so "
        "the anchored side comes first");
  }
}

SpatialMotion motionSubspace(JointModel model, const Vec3& axis) {
  requireUnitAxis(axis);
  SpatialMotion s;
  if (model == JointModel::Revolute) {
    s.angular = axis;
  } else {
    s.linear = axis;
  }
  return s;
}

SpatialMotion jointSubspaceInChild(const JointSpec& joint, JointModel model) {
  return motionTransform(joint.childFrame)
      .apply(motionSubspace(model, joint.axis));
}

HomogeneousTransform jointTransform(const JointSpec& joint, JointModel model,
                                    double q) {
  requireUnitAxis(joint.axis);
  HomogeneousTransform motion;
  if (model == JointModel::Revolute) {
    motion.rotation =
        Quaternion::fromAxisAngle(joint.axis.normalized(), q).toRotation();
  } else {
    motion.translation = joint.axis * q;
  }
  return joint.parentFrame * motion * joint.childFrame.inverse();
}

std::vector<Topology> enumerateTopologies(int jointCount) {
  // jointCount 0 is a jointless free body: one empty candidate.
  if (jointCount < 0 || jointCount > 20) {
    throw std::invalid_argument("joint count must be in [0, 20]");
  }
  const size_t count = size_t{1} << jointCount;
  std::vector<Topology> out;
  out.reserve(count);
  for (size_t code = 0; code < count; ++code) {
    Topology topology;
    topology.models.reserve(jointCount);
    for (int j = 0; j < jointCount; ++j) {
      const bool prismatic = (code >> (jointCount - 1 - j)) & 1u;
      topology.models.push_back(prismatic ? JointModel::Prismatic
                                          : JointModel::Revolute);
    }
    out.push_back(std::move(topology));
  }
  return out;
}

std::vector<Pose> forwardKinematics(const ObjectSpec& spec,
                                    const Topology& topology,
                                    const std::vector<double>& q) {
  if (topology.models.size() != spec.joints.size() ||
      q.size() != spec.joints.size()) {
    throw std::invalid_argument(
        "topology and q must provide one entry per joint");
  }
  std::vector<Pose> poses;
  poses.reserve(spec.links.size());
  HomogeneousTransform current = poseToHomogeneous(spec.basePose);
  poses.push_back(spec.basePose);
  for (size_t i = 0; i < spec.joints.size(); ++i) {
    const JointSpec& joint = spec.joints[i];
    if (q[i] < joint.limitLo || q[i] > joint.limitHi) {
      throw std::out_of_range("joint " + std::to_string(joint.index) +
                              " position violates its limits");
    }
    current = current * jointTransform(joint, topology.models[i], q[i]);
    poses.push_back(homogeneousToPose(current));
  }
  return poses;
}

double projectJointPosition(const Pose& parentPose, const Pose& childPose,
                            const JointSpec& joint, JointModel model) {
  const HomogeneousTransform relative =
      poseToHomogeneous(parentPose).inverse() * poseToHomogeneous(childPose);
  // Joint-frame motion: parentFrame^-1 * relative * childFrame.
  const HomogeneousTransform motion =
      joint.parentFrame.inverse() * relative * joint.childFrame;
  if (model == JointModel::Revolute) {
    return joint.axis.dot(Quaternion::fromRotation(motion.rotation).log());
  }
  return joint.axis.dot(motion.translation);
}

}  // namespace artopo
