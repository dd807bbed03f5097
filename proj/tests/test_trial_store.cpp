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

#include "artopo/trial_store.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "artopo/model_io.h"
#include "test_util.h"

namespace artopo {
namespace {

using testutil::twoLinkSpec;

std::string tempPath(const std::string& name) {
  return ::testing::TempDir() + name;
}

TrialRecord makeRecord(size_t sampleCount) {
  TrialRecord record;
  record.metadata.object = twoLinkSpec(0.1, 0.1);
  record.metadata.objectHash = hashHex(specHash(record.metadata.object));
  record.metadata.dt = 0.001;
  record.metadata.seed = 42;
  record.metadata.trueTopology = topologyFromLabel("R");
  for (size_t k = 0; k < sampleCount; ++k) {
    TrialSample sample;
    sample.t = 0.001 * static_cast<double>(k);
    // Awkward decimals on purpose; the format must round-trip them bit
    // exactly.
    const double q = 0.1 + (1.0 / 3.0) * 1e-3 * static_cast<double>(k);
    sample.poses = forwardKinematics(record.metadata.object,
                                     *record.metadata.trueTopology, {q});
    sample.fLeft.force = Vec3(0.1 * k, -1.0 / 7.0, 19.62);
    sample.fLeft.moment = Vec3(1e-17, 0.0, -2.5e-13);
    sample.fRight.force = Vec3(0.2, 0.0, 0.0);
    sample.fRight.moment = Vec3(0.0, 0.0, 1e-3 * k);
    sample.moving = (k % 2) == 1;
    record.samples.push_back(sample);
  }
  return record;
}

void expectSameNumerics(const TrialRecord& a, const TrialRecord& b) {
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (size_t k = 0; k < a.samples.size(); ++k) {
    const TrialSample& s = a.samples[k];
    const TrialSample& r = b.samples[k];
    EXPECT_EQ(s.t, r.t);
    EXPECT_EQ(s.moving, r.moving);
    ASSERT_EQ(s.poses.size(), r.poses.size());
    for (size_t link = 0; link < s.poses.size(); ++link) {
      EXPECT_EQ(s.poses[link].position, r.poses[link].position);
      const Quaternion qa = s.poses[link].orientation.canonicalized();
      const Quaternion qb = r.poses[link].orientation.canonicalized();
      EXPECT_EQ(qa.w(), qb.w());
      EXPECT_EQ(qa.x(), qb.x());
      EXPECT_EQ(qa.y(), qb.y());
      EXPECT_EQ(qa.z(), qb.z());
    }
    EXPECT_EQ(s.fLeft.vector(), r.fLeft.vector());
    EXPECT_EQ(s.fRight.vector(), r.fRight.vector());
  }
}

TEST(TrialStore, RoundTripIsBitExact) {
  const std::string path = tempPath("trial_roundtrip.trial");
  const TrialRecord record = makeRecord(5);
  writeTrial(record, path);
  const TrialRecord back = readTrial(path);
  expectSameNumerics(record, back);
  EXPECT_EQ(back.metadata.dt, record.metadata.dt);
  EXPECT_EQ(back.metadata.seed, record.metadata.seed);
  EXPECT_EQ(back.metadata.objectHash, record.metadata.objectHash);
  ASSERT_TRUE(back.metadata.trueTopology.has_value());
  EXPECT_EQ(back.metadata.trueTopology->label(), "R");
  EXPECT_EQ(specHash(back.metadata.object),
            specHash(record.metadata.object));

  // A second write of the reloaded record reproduces the file byte for
  // byte.
  const std::string path2 = tempPath("trial_roundtrip2.trial");
  writeTrial(back, path2);
  std::ifstream f1(path, std::ios::binary), f2(path2, std::ios::binary);
  std::stringstream c1, c2;
  c1 << f1.rdbuf();
  c2 << f2.rdbuf();
  EXPECT_EQ(c1.str(), c2.str());
  std::remove(path.c_str());
  std::remove(path2.c_str());
}

TEST(TrialStore, LargeTrialPreservesSampleCount) {
  const std::string path = tempPath("trial_large.trial");
  writeTrial(makeRecord(5000), path);
  EXPECT_EQ(readTrial(path).samples.size(), 5000u);
  std::remove(path.c_str());
}

TEST(TrialStore, WriteRejectsInvalidRecords) {
  const std::string path = tempPath("trial_invalid.trial");
  TrialRecord empty = makeRecord(5);
  empty.samples.clear();
  EXPECT_THROW(writeTrial(empty, path), std::invalid_argument);

  TrialRecord single = makeRecord(1);
  EXPECT_THROW(writeTrial(single, path), std::invalid_argument);

  TrialRecord gap = makeRecord(5);
  gap.samples[3].t += 0.0005;
  EXPECT_THROW(writeTrial(gap, path), std::invalid_argument);

  TrialRecord wrongPoses = makeRecord(5);
  wrongPoses.samples[2].poses.pop_back();
  EXPECT_THROW(writeTrial(wrongPoses, path), std::invalid_argument);

  TrialRecord nan = makeRecord(5);
  nan.samples[1].fLeft.force.x() = std::nan("");
  EXPECT_THROW(writeTrial(nan, path), std::invalid_argument);
}

TEST(TrialStore, ReadRejectsSchemaMismatch) {
  const std::string path = tempPath("trial_schema.trial");
  writeTrial(makeRecord(3), path);
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  in.close();
  std::string text = content.str();
  const size_t at = text.find("trial/v1");
  ASSERT_NE(at, std::string::npos);
  text.replace(at, 8, "trial/v9");
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  EXPECT_THROW(readTrial(path), std::invalid_argument);
  std::remove(path.c_str());
}

TEST(TrialStore, TruncatedFileNamesByteOffset) {
  const std::string path = tempPath("trial_truncated.trial");
  writeTrial(makeRecord(4), path);
  std::ifstream in(path, std::ios::binary);
  std::stringstream content;
  content << in.rdbuf();
  in.close();
  const std::string full = content.str();

  // Chop mid-line: the short final line has too few fields.
  std::ofstream out(path, std::ios::binary);
  out << full.substr(0, full.size() - 40);
  out.close();
  try {
    readTrial(path);
    FAIL() << "expected TrialParseError";
  } catch (const TrialParseError& e) {
    EXPECT_GT(e.byteOffset(), 0u);
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
  }

  // Chop whole lines: header sample count exposes the loss.
  const size_t lastLine = full.rfind('\n', full.size() - 2);
  std::ofstream out2(path, std::ios::binary);
  out2 << full.substr(0, lastLine + 1);
  out2.close();
  EXPECT_THROW(readTrial(path), TrialParseError);
  std::remove(path.c_str());
}

TEST(TrialStore, ShuffledTimestampsRejected) {
  const std::string path = tempPath("trial_shuffled.trial");
  writeTrial(makeRecord(4), path);
  std::ifstream in(path, std::ios::binary);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    lines.push_back(line);
  }
  in.close();
  ASSERT_EQ(lines.size(), 5u);
  std::swap(lines[2], lines[3]);
  std::ofstream out(path, std::ios::binary);
  for (const std::string& l : lines) {
    out << l << "\n";
  }
  out.close();
  try {
    readTrial(path);
    FAIL() << "expected validation error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("non-monotone"), std::string::npos);
  }
  std::remove(path.c_str());
}

TEST(TrialStore, MalformedNumberNamesByteOffset) {
  const std::string path = tempPath("trial_malformed.trial");
  writeTrial(makeRecord(3), path);
  std::ifstream in(path, std::ios::binary);
  std::stringstream content;
  content << in.rdbuf();
  in.close();
  std::string text = content.str();
  // Corrupt the first numeric field of the second sample line.
  size_t firstLineEnd = text.find('\n');
  size_t secondLineEnd = text.find('\n', firstLineEnd + 1);
  text.replace(secondLineEnd + 1, 5, "xyzzy");
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  EXPECT_THROW(readTrial(path), TrialParseError);
  std::remove(path.c_str());
}

TEST(TrialStore, HandWrittenFixtureParsesToKnownValues) {
  // Single free-floating 1 kg body, three samples of a 0.1 m/s glide
  // along x under a 0.1 N force. Written against the trial/v1 format doc.
  const std::string header =
      R"({"schema":"trial/v1","object":{"schema":"object/v1","links":)"
      R"([{"name":"body","mass":1.0,"com":[0.0,0.0,0.0],)"
      R"("inertiaAtCom":[[0.01,0.0,0.0],[0.0,0.01,0.0],[0.0,0.0,0.01]],)"
      R"("isHandle":false}],"joints":[],"anchoredTerminal":"",)"
      R"("basePose":{"translation":[0.0,0.0,0.0],)"
      R"("quaternion":[1.0,0.0,0.0,0.0]}},"objectHash":"0000000000000000",)"
      R"("dt":0.001,"seed":7,"gravity":[0.0,0.0,0.0],"sampleCount":3})";
  const std::string body =
      "0 0.5 0 0 1 0 0 0 0 0 0 0 0 0 0.1 0 0 0 0 0 1\n"
      "0.001 0.5001 0 0 1 0 0 0 0 0 0 0 0 0 0.1 0 0 0 0 0 1\n"
      "0.002 0.5002 0 0 1 0 0 0 0 0 0 0 0 0 0.1 0 0 0 0 0 1\n";
  const std::string path = tempPath("trial_handwritten.trial");
  std::ofstream out(path, std::ios::binary);
  out << header << "\n" << body;
  out.close();

  const TrialRecord record = readTrial(path);
  ASSERT_EQ(record.samples.size(), 3u);
  EXPECT_EQ(record.metadata.object.links.size(), 1u);
  EXPECT_FALSE(record.metadata.object.anchored());
  EXPECT_EQ(record.metadata.seed, 7u);
  EXPECT_EQ(record.samples[1].t, 0.001);
  EXPECT_EQ(record.samples[1].poses[0].position.x(), 0.5001);
  EXPECT_EQ(record.samples[2].fRight.force.x(), 0.1);
  EXPECT_TRUE(record.samples[0].moving);
  std::remove(path.c_str());
}

}  // namespace
}  // namespace artopo
