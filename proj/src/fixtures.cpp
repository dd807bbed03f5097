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

#include "artopo/fixtures.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

#include "artopo/model_io.h"

namespace artopo {
namespace {

constexpr double kBoxMass = 1.0;
constexpr double kBoxLx = 0.30;
constexpr double kBoxLy = 0.10;
constexpr double kBoxLz = 0.05;
constexpr double kDemoDamping = 0.1;
constexpr double kDemoFriction = 0.1;

/// Demo links use the box center as the link frame, so the center of mass
/// sits at the origin and the joint lands half a box length away.
LinkSpec boxLink(const std::string& name) {
  return {name,
          SpatialInertia::fromComInertia(
              kBoxMass, Vec3::Zero(),
              boxInertia(kBoxMass, kBoxLx, kBoxLy, kBoxLz)),
          false};
}

HomogeneousTransform translation(double x, double y, double z) {
  HomogeneousTransform t;
  t.translation = Vec3(x, y, z);
  return t;
}

ComponentMask maskOf(const std::vector<std::string>& names) {
  return componentMaskFromNames(names);
}

}  // namespace

Mat3 boxInertia(double mass, double lx, double ly, double lz) {
  if (!(mass > 0.0) || !(lx > 0.0) || !(ly > 0.0) || !(lz > 0.0)) {
    throw std::invalid_argument("boxInertia: dimensions and mass must be > 0");
  }
  Mat3 inertia = Mat3::Zero();
  inertia(0, 0) = mass * (ly * ly + lz * lz) / 12.0;
  inertia(1, 1) = mass * (lx * lx + lz * lz) / 12.0;
  inertia(2, 2) = mass * (lx * lx + ly * ly) / 12.0;
  return inertia;
}

Fixture revoluteDemo() {
  Fixture fixture;
  fixture.name = "revolute-demo";
  fixture.object.links = {boxLink("base"), boxLink("tip")};

  JointSpec joint;
  joint.index = 1;
  joint.parentFrame = translation(kBoxLx / 2.0, 0.0, 0.0);
  joint.childFrame = translation(-kBoxLx / 2.0, 0.0, 0.0);
  joint.axis = Vec3::UnitZ();
  joint.limitLo = 0.0;
  joint.limitHi = 95.0 * std::numbers::pi / 180.0;
  joint.damping = kDemoDamping;
  joint.staticFriction = kDemoFriction;
  fixture.object.joints = {joint};
  fixture.object.anchoredTerminal = "base";

  fixture.trueTopology = topologyFromLabel("R");
  // The wrench acts at the tip frame, 0.15 m from the hinge; with the
  // 0.2 N force cap the tangential force alone tops out at 0.03 N m, so
  // the hinge moment must be active for breakaway past 0.1 N m friction.
  fixture.motionMask = maskOf({"fy", "mz"});
  fixture.constrainedMask = maskOf({"fx"});
  fixture.initialQ = {0.3};
  return fixture;
}

Fixture prismaticDemo() {
  Fixture fixture;
  fixture.name = "prismatic-demo";
  fixture.object.links = {boxLink("base"), boxLink("tip")};

  JointSpec joint;
  joint.index = 1;
  joint.parentFrame = translation(kBoxLx / 2.0, 0.0, 0.0);
  joint.childFrame = translation(-kBoxLx / 2.0, 0.0, 0.0);
  joint.axis = Vec3::UnitX();
  joint.limitLo = 0.0;
  joint.limitHi = 0.15;
  joint.damping = kDemoDamping;
  joint.staticFriction = kDemoFriction;
  fixture.object.joints = {joint};
  fixture.object.anchoredTerminal = "base";

  fixture.trueTopology = topologyFromLabel("P");
  fixture.motionMask = maskOf({"fx"});
  fixture.constrainedMask = maskOf({"fy", "mz"});
  fixture.initialQ = {0.05};
  return fixture;
}

Fixture syntheticChain(const Topology& truth) {
  if (truth.models.size() != 2) {
    throw std::invalid_argument("syntheticChain: truth must have 2 joints");
  }
  Fixture fixture;
  fixture.name = "synthetic-" + truth.label();
  fixture.object.links = {boxLink("base"), boxLink("mid"), boxLink("tip")};

  JointSpec joint;
  joint.parentFrame = translation(kBoxLx / 2.0, 0.0, 0.0);
  joint.childFrame = translation(-kBoxLx / 2.0, 0.0, 0.0);
  // Damping-dominated response keeps excursions near tau / (d w) ~ 1 for
  // the exploration band, so trials never reach the stops; limit impacts
  // would inject unmeasured anchor impulses and poison the closure for
  // every candidate alike.
  joint.limitLo = -2.5;
  joint.limitHi = 2.5;
  joint.damping = 0.4;
  joint.staticFriction = 0.0;

  joint.index = 1;
  joint.axis = Vec3::UnitZ();
  fixture.object.joints.push_back(joint);
  joint.index = 2;
  joint.axis = Vec3::UnitY();
  fixture.object.joints.push_back(joint);
  fixture.object.anchoredTerminal = "base";

  fixture.trueTopology = truth;
  // Forces along y and z plus moments about both joint axes do work on
  // every candidate pair over the z- and y-axis joints.
  fixture.motionMask = maskOf({"fy", "fz", "my", "mz"});
  fixture.constrainedMask = 0;
  fixture.initialQ = {0.1, -0.1};
  return fixture;
}

TrialRecord freeBodyTrial(double amplitude, double frequency, double mass,
                          double duration, double dt) {
  if (!(frequency > 0.0) || !(mass > 0.0) || !(dt > 0.0) ||
      !(duration >= 2.0 * dt)) {
    throw std::invalid_argument("freeBodyTrial: invalid parameters");
  }

  TrialRecord record;
  record.metadata.object.links.push_back(
      {"body",
       SpatialInertia::fromComInertia(mass, Vec3::Zero(),
                                      boxInertia(mass, kBoxLx, kBoxLy, kBoxLz)),
       false});
  record.metadata.object.anchoredTerminal.clear();
  record.metadata.object.validate();
  record.metadata.objectHash = hashHex(specHash(record.metadata.object));
  record.metadata.dt = dt;
  record.metadata.gravity = Vec3::Zero();
  record.metadata.trueTopology = Topology{};

  SinusoidSpec signal;
  signal.amplitude[0] = amplitude;
  signal.frequency[0] = frequency;
  signal.active = componentMaskFromNames({"fx"});
  signal.validate();
  record.metadata.signal = signal;

  // F = A sin(w t) x in the body frame, which never rotates, so
  // v(t) = A / (w m) (1 - cos(w t)) and x(t) integrates in closed form.
  const double omega = 2.0 * std::numbers::pi * frequency;
  const auto steps = static_cast<std::int64_t>(std::llround(duration / dt));
  record.samples.reserve(static_cast<std::size_t>(steps));
  for (std::int64_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double scale = amplitude / (omega * mass);
    TrialSample sample;
    sample.t = t;
    Pose pose;
    pose.position = Vec3(scale * (t - std::sin(omega * t) / omega), 0.0, 0.0);
    sample.poses = {pose};
    sample.fRight.force = Vec3(amplitude * std::sin(omega * t), 0.0, 0.0);
    sample.moving = std::abs(scale * (1.0 - std::cos(omega * t))) > 1e-5;
    record.samples.push_back(sample);
  }
  record.validate();
  return record;
}

void saveFixture(const Fixture& fixture, const std::string& path) {
  fixture.object.validate();
  if (static_cast<int>(fixture.trueTopology.models.size()) !=
      fixture.object.jointCount()) {
    throw std::invalid_argument(
        "saveFixture: trueTopology size does not match joint count");
  }
  nlohmann::json j;
  j["schema"] = "fixture/v1";
  j["name"] = fixture.name;
  j["object"] = objectSpecToJson(fixture.object);
  j["trueTopology"] = fixture.trueTopology.label();
  j["motionComponents"] = componentMaskNames(fixture.motionMask);
  j["constrainedComponents"] = componentMaskNames(fixture.constrainedMask);
  j["initialQ"] = fixture.initialQ;

  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("saveFixture: cannot open " + path);
  }
  out << j.dump(2) << "\n";
  if (!out) {
    throw std::runtime_error("saveFixture: write failed for " + path);
  }
}

Fixture loadFixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("loadFixture: cannot open " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("loadFixture: " + path + ": " + e.what());
  }
  if (!j.is_object() || j.value("schema", "") != "fixture/v1") {
    throw std::invalid_argument("loadFixture: " + path +
                                ": expected schema fixture/v1");
  }
  Fixture fixture;
  try {
    fixture.name = j.at("name").get<std::string>();
    fixture.object = objectSpecFromJson(j.at("object"));
    fixture.trueTopology =
        topologyFromLabel(j.at("trueTopology").get<std::string>());
    fixture.motionMask = componentMaskFromNames(
        j.at("motionComponents").get<std::vector<std::string>>());
    fixture.constrainedMask = componentMaskFromNames(
        j.value("constrainedComponents", std::vector<std::string>{}));
    fixture.initialQ = j.value("initialQ", std::vector<double>{});
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("loadFixture: " + path + ": " + e.what());
  }
  if (static_cast<int>(fixture.trueTopology.models.size()) !=
      fixture.object.jointCount()) {
    throw std::invalid_argument(
        "loadFixture: trueTopology size does not match joint count");
  }
  if (!fixture.initialQ.empty() &&
      static_cast<int>(fixture.initialQ.size()) !=
          fixture.object.jointCount()) {
    throw std::invalid_argument(
        "loadFixture: initialQ size does not match joint count");
  }
  return fixture;
}

}  // namespace artopo
