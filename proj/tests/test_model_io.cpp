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

#include <gtest/gtest.h>

#include <cstdio>
#include <random>

#include "test_util.h"

namespace artopo {
namespace {

using testutil::twoLinkSpec;

TEST(ObjectSpecJson, RoundTripPreservesEveryField) {
  ObjectSpec spec = twoLinkSpec(0.1, 0.05);
  spec.joints[0].parentFrame.rotation =
      Quaternion::fromAxisAngle(Vec3::UnitY(), 0.3).toRotation();
  spec.basePose.position = Vec3(0.1, -0.2, 0.33);
  spec.basePose.orientation = Quaternion::fromAxisAngle(Vec3::UnitZ(), 0.5);

  const ObjectSpec back = objectSpecFromJson(objectSpecToJson(spec));
  ASSERT_EQ(back.links.size(), spec.links.size());
  ASSERT_EQ(back.joints.size(), spec.joints.size());
  EXPECT_EQ(back.anchoredTerminal, spec.anchoredTerminal);
  for (size_t i = 0; i < spec.links.size(); ++i) {
    EXPECT_EQ(back.links[i].name, spec.links[i].name);
    EXPECT_EQ(back.links[i].isHandle, spec.links[i].isHandle);
    EXPECT_EQ(back.links[i].inertia.mass(), spec.links[i].inertia.mass());
    EXPECT_EQ(back.links[i].inertia.com(), spec.links[i].inertia.com());
    EXPECT_LT((back.links[i].inertia.inertiaAtFrame() -
               spec.links[i].inertia.inertiaAtFrame())
                  .norm(),
              1e-15);
  }
  const JointSpec& a = spec.joints[0];
  const JointSpec& b = back.joints[0];
  EXPECT_EQ(b.index, a.index);
  EXPECT_EQ(b.limitLo, a.limitLo);
  EXPECT_EQ(b.limitHi, a.limitHi);
  EXPECT_EQ(b.damping, a.damping);
  EXPECT_EQ(b.staticFriction, a.staticFriction);
  EXPECT_EQ(b.axis, a.axis);
  EXPECT_LT((b.parentFrame.rotation - a.parentFrame.rotation).norm(), 1e-12);
  EXPECT_EQ(b.parentFrame.translation, a.parentFrame.translation);
  EXPECT_EQ(back.basePose.position, spec.basePose.position);
}

TEST(ObjectSpecJson, RejectsWrongSchemaAndInvalidSpecs) {
  nlohmann::json j = objectSpecToJson(twoLinkSpec());
  j["schema"] = "object/v2";
  EXPECT_THROW(objectSpecFromJson(j), std::invalid_argument);

  nlohmann::json badAxis = objectSpecToJson(twoLinkSpec());
  badAxis["joints"][0]["axis"] = {0.0, 0.0, 2.0};
  EXPECT_THROW(objectSpecFromJson(badAxis), std::invalid_argument);
}

TEST(SinusoidJson, RoundTrip) {
  std::mt19937_64 rng(5);
  const SinusoidSpec spec =
      sampleSinusoid(rng, componentMaskFromNames({"fy", "mz"}));
  const SinusoidSpec back = sinusoidFromJson(sinusoidToJson(spec));
  EXPECT_EQ(back.amplitude, spec.amplitude);
  EXPECT_EQ(back.frequency, spec.frequency);
  EXPECT_EQ(back.active, spec.active);
}

TEST(SpecHash, StableAndSensitive) {
  const ObjectSpec spec = twoLinkSpec();
  const std::uint64_t h1 = specHash(spec);
  const std::uint64_t h2 = specHash(twoLinkSpec());
  EXPECT_EQ(h1, h2);

  ObjectSpec perturbed = twoLinkSpec();
  perturbed.joints[0].damping = 0.2;
  EXPECT_NE(specHash(perturbed), h1);

  const std::string hex = hashHex(h1);
  EXPECT_EQ(hex.size(), 16u);
  EXPECT_EQ(hex.find_first_not_of("0123456789abcdef"), std::string::npos);
}

TEST(SpecFiles, SaveLoadRoundTrip) {
  const std::string path = ::testing::TempDir() + "artopo_spec_test.json";
  const ObjectSpec spec = twoLinkSpec(0.1, 0.1);
  saveObjectSpec(spec, path);
  const ObjectSpec back = loadObjectSpec(path);
  EXPECT_EQ(specHash(back), specHash(spec));
  std::remove(path.c_str());

  EXPECT_THROW(loadObjectSpec("/nonexistent/dir/spec.json"),
               std::runtime_error);
}

}  // namespace
}  // namespace artopo
