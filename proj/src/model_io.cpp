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

#include "artopo/model_io.h"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace artopo {

namespace {

using nlohmann::json;

json vec3ToJson(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec3FromJson(const json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw std::invalid_argument("expected a 3-element array");
  }
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

json quaternionToJson(const Quaternion& q) {
  return json::array({q.w(), q.x(), q.y(), q.z()});
}

Quaternion quaternionFromJson(const json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw std::invalid_argument("expected a 4-element quaternion [w,x,y,z]");
  }
  return Quaternion(j[0].get<double>(), j[1].get<double>(),
                    j[2].get<double>(), j[3].get<double>());
}

json mat3ToJson(const Mat3& m) {
  json rows = json::array();
  for (int r = 0; r < 3; ++r) {
    rows.push_back(json::array({m(r, 0), m(r, 1), m(r, 2)}));
  }
  return rows;
}

Mat3 mat3FromJson(const json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw std::invalid_argument("expected a 3x3 matrix as nested arrays");
  }
  Mat3 m;
  for (int r = 0; r < 3; ++r) {
    const Vec3 row = vec3FromJson(j[r]);
    m.row(r) = row.transpose();
  }
  return m;
}

}  // namespace

json poseToJson(const Pose& pose) {
  return json{{"translation", vec3ToJson(pose.position)},
              {"quaternion", quaternionToJson(pose.orientation)}};
}

Pose poseFromJson(const json& j) {
  Pose pose;
  pose.position = vec3FromJson(j.at("translation"));
  pose.orientation = quaternionFromJson(j.at("quaternion"));
  return pose;
}

json transformToJson(const HomogeneousTransform& transform) {
  return json{
      {"translation", vec3ToJson(transform.translation)},
      {"quaternion", quaternionToJson(Quaternion::fromRotation(transform.rotation))}};
}

HomogeneousTransform transformFromJson(const json& j) {
  HomogeneousTransform transform;
  transform.translation = vec3FromJson(j.at("translation"));
  transform.rotation = quaternionFromJson(j.at("quaternion")).toRotation();
  return transform;
}

json objectSpecToJson(const ObjectSpec& spec) {
  json links = json::array();
  for (const LinkSpec& link : spec.links) {
    links.push_back(json{{"name", link.name},
                         {"mass", link.inertia.mass()},
                         {"com", vec3ToJson(link.inertia.com())},
                         {"inertiaAtCom", mat3ToJson(link.inertia.inertiaAtCom())},
                         {"isHandle", link.isHandle}});
  }
  json joints = json::array();
  for (const JointSpec& joint : spec.joints) {
    joints.push_back(json{{"index", joint.index},
                          {"parentFrame", transformToJson(joint.parentFrame)},
                          {"childFrame", transformToJson(joint.childFrame)},
                          {"axis", vec3ToJson(joint.axis)},
                          {"limits", json::array({joint.limitLo, joint.limitHi})},
                          {"damping", joint.damping},
                          {"staticFriction", joint.staticFriction}});
  }
  return json{{"schema", "object/v1"},
              {"links", links},
              {"joints", joints},
              {"anchoredTerminal", spec.anchoredTerminal},
              {"basePose", poseToJson(spec.basePose)}};
}

ObjectSpec objectSpecFromJson(const json& j) {
  if (j.value("schema", "") != "object/v1") {
    throw std::invalid_argument("object spec schema must be object/v1");
  }
  ObjectSpec spec;
  for (const json& link : j.at("links")) {
    spec.links.push_back(
        {link.at("name").get<std::string>(),
         SpatialInertia::fromComInertia(link.at("mass").get<double>(),
                                        vec3FromJson(link.at("com")),
                                        mat3FromJson(link.at("inertiaAtCom"))),
         link.value("isHandle", false)});
  }
  for (const json& joint : j.at("joints")) {
    JointSpec out;
    out.index = joint.at("index").get<int>();
    out.parentFrame = transformFromJson(joint.at("parentFrame"));
    out.childFrame = transformFromJson(joint.at("childFrame"));
    out.axis = vec3FromJson(joint.at("axis"));
    const json& limits = joint.at("limits");
    if (!limits.is_array() || limits.size() != 2) {
      throw std::invalid_argument("joint limits must be [lo, hi]");
    }
    out.limitLo = limits[0].get<double>();
    out.limitHi = limits[1].get<double>();
    out.damping = joint.at("damping").get<double>();
    out.staticFriction = joint.at("staticFriction").get<double>();
    spec.joints.push_back(out);
  }
  spec.anchoredTerminal = j.value("anchoredTerminal", "");
  if (j.contains("basePose")) {
    spec.basePose = poseFromJson(j.at("basePose"));
  }
  spec.validate();
  return spec;
}

json sinusoidToJson(const SinusoidSpec& spec) {
  json amplitude = json::array();
  json frequency = json::array();
  for (int k = 0; k < 6; ++k) {
    amplitude.push_back(spec.amplitude[k]);
    frequency.push_back(spec.frequency[k]);
  }
  json active = json::array();
  for (const std::string& name : componentMaskNames(spec.active)) {
    active.push_back(name);
  }
  return json{{"amplitude", amplitude},
              {"frequency", frequency},
              {"active", active}};
}

SinusoidSpec sinusoidFromJson(const json& j) {
  SinusoidSpec spec;
  const json& amplitude = j.at("amplitude");
  const json& frequency = j.at("frequency");
  if (amplitude.size() != 6 || frequency.size() != 6) {
    throw std::invalid_argument("sinusoid arrays must have six components");
  }
  for (int k = 0; k < 6; ++k) {
    spec.amplitude[k] = amplitude[k].get<double>();
    spec.frequency[k] = frequency[k].get<double>();
  }
  spec.active = componentMaskFromNames(
      j.at("active").get<std::vector<std::string>>());
  spec.validate();
  return spec;
}

ObjectSpec loadObjectSpec(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open object spec file " + path);
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("object spec parse error in " + path + ": " +
                                e.what());
  }
  return objectSpecFromJson(j);
}

void saveObjectSpec(const ObjectSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write object spec file " + path);
  }
  out << objectSpecToJson(spec).dump(2) << "\n";
}

std::uint64_t specHash(const ObjectSpec& spec) {
  const std::string canonical = objectSpecToJson(spec).dump();
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (const unsigned char c : canonical) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::string hashHex(std::uint64_t hash) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016" PRIx64, hash);
  return std::string(buffer);
}

}  // namespace artopo
