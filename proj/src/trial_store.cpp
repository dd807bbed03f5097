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

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "artopo/model_io.h"

namespace artopo {

namespace {

using nlohmann::json;

void appendDouble(std::string& line, double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  if (!line.empty()) {
    line.push_back(' ');
  }
  line.append(buffer);
}

void appendForce(std::string& line, const SpatialForce& f) {
  const Vec6 v = f.vector();
  for (int k = 0; k < 6; ++k) {
    appendDouble(line, v[k]);
  }
}

bool allFinite(const Vec6& v) { return v.allFinite(); }

}  // namespace

TrialParseError::TrialParseError(const std::string& message,
                                 std::size_t byteOffset)
    : std::runtime_error(message + " (at byte " + std::to_string(byteOffset) +
                         ")"),
      byteOffset_(byteOffset) {}

void TrialRecord::validate() const {
  if (samples.size() < 2) {
    throw std::invalid_argument("trial needs at least 2 samples");
  }
  if (!(metadata.dt > 0.0)) {
    throw std::invalid_argument("trial dt must be positive");
  }
  metadata.object.validate();
  const size_t linkCount = metadata.object.links.size();
  for (size_t k = 0; k < samples.size(); ++k) {
    const TrialSample& sample = samples[k];
    if (sample.poses.size() != linkCount) {
      throw std::invalid_argument("sample " + std::to_string(k) +
                                  " pose count does not match the object");
    }
    if (!std::isfinite(sample.t) || !allFinite(sample.fLeft.vector()) ||
        !allFinite(sample.fRight.vector())) {
      throw std::invalid_argument("sample " + std::to_string(k) +
                                  " contains non-finite values");
    }
    for (const Pose& pose : sample.poses) {
      if (!pose.position.allFinite()) {
        throw std::invalid_argument("sample " + std::to_string(k) +
                                    " contains non-finite pose");
      }
    }
  }
  for (size_t k = 1; k < samples.size(); ++k) {
    if (samples[k].t - samples[k - 1].t <= 0.0) {
      throw std::invalid_argument("non-monotone time at sample " +
                                  std::to_string(k));
    }
  }
  for (size_t k = 1; k < samples.size(); ++k) {
    const double step = samples[k].t - samples[k - 1].t;
    if (std::abs(step - metadata.dt) > 1e-9) {
      throw std::invalid_argument("non-uniform time step at sample " +
                                  std::to_string(k));
    }
  }
}

void writeTrial(const TrialRecord& record, const std::string& path) {
  record.validate();

  json header{{"schema", record.metadata.schema},
              {"object", objectSpecToJson(record.metadata.object)},
              {"objectHash", record.metadata.objectHash},
              {"dt", record.metadata.dt},
              {"seed", record.metadata.seed},
              {"gravity", json::array({record.metadata.gravity.x(),
                                       record.metadata.gravity.y(),
                                       record.metadata.gravity.z()})},
              {"sampleCount", record.samples.size()}};
  if (record.metadata.trueTopology) {
    header["trueTopology"] = record.metadata.trueTopology->label();
  }
  if (record.metadata.signal) {
    header["signal"] = sinusoidToJson(*record.metadata.signal);
  }

  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write trial file " + path);
  }
  out << header.dump() << "\n";
  for (const TrialSample& sample : record.samples) {
    std::string line;
    appendDouble(line, sample.t);
    for (const Pose& pose : sample.poses) {
      appendDouble(line, pose.position.x());
      appendDouble(line, pose.position.y());
      appendDouble(line, pose.position.z());
      const Quaternion q = pose.orientation.canonicalized();
      appendDouble(line, q.w());
      appendDouble(line, q.x());
      appendDouble(line, q.y());
      appendDouble(line, q.z());
    }
    appendForce(line, sample.fLeft);
    appendForce(line, sample.fRight);
    line += sample.moving ? " 1" : " 0";
    out << line << "\n";
  }
  if (!out) {
    throw std::runtime_error("write failure on trial file " + path);
  }
}

TrialRecord readTrial(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open trial file " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();

  const size_t headerEnd = content.find('\n');
  if (headerEnd == std::string::npos) {
    throw TrialParseError("missing header line", content.size());
  }

  TrialRecord record;
  json header;
  try {
    header = json::parse(content.substr(0, headerEnd));
  } catch (const json::parse_error& e) {
    throw TrialParseError(std::string("malformed header: ") + e.what(),
                          e.byte);
  }
  const std::string schema = header.value("schema", "");
  if (schema != "trial/v1") {
    throw std::invalid_argument("unsupported trial schema '" + schema +
                                "' (expected trial/v1)");
  }
  record.metadata.schema = schema;
  record.metadata.object = objectSpecFromJson(header.at("object"));
  record.metadata.objectHash = header.value("objectHash", "");
  record.metadata.dt = header.at("dt").get<double>();
  record.metadata.seed = header.at("seed").get<std::uint64_t>();
  const json& gravity = header.at("gravity");
  if (!gravity.is_array() || gravity.size() != 3) {
    throw std::invalid_argument("gravity must be a 3-vector");
  }
  record.metadata.gravity = Vec3(gravity[0].get<double>(),
                                 gravity[1].get<double>(),
                                 gravity[2].get<double>());
  if (header.contains("trueTopology")) {
    record.metadata.trueTopology =
        topologyFromLabel(header.at("trueTopology").get<std::string>());
  }
  if (header.contains("signal")) {
    record.metadata.signal = sinusoidFromJson(header.at("signal"));
  }
  const size_t declaredSamples = header.at("sampleCount").get<size_t>();

  const size_t linkCount = record.metadata.object.links.size();
  const size_t fieldCount = 1 + 7 * linkCount + 12 + 1;

  size_t offset = headerEnd + 1;
  while (offset < content.size()) {
    size_t lineEnd = content.find('\n', offset);
    if (lineEnd == std::string::npos) {
      lineEnd = content.size();
    }
    if (lineEnd == offset) {
      offset = lineEnd + 1;
      continue;
    }
    const char* cursor = content.data() + offset;
    const char* const limit = content.data() + lineEnd;

    std::vector<double> fields;
    fields.reserve(fieldCount);
    while (cursor < limit) {
      char* next = nullptr;
      const double value = std::strtod(cursor, &next);
      if (next == cursor) {
        throw TrialParseError("malformed number in sample line",
                              static_cast<size_t>(cursor - content.data()));
      }
      fields.push_back(value);
      cursor = next;
      while (cursor < limit && *cursor == ' ') {
        ++cursor;
      }
    }
    if (fields.size() != fieldCount) {
      throw TrialParseError("expected " + std::to_string(fieldCount) +
                                " fields per sample, got " +
                                std::to_string(fields.size()),
                            offset);
    }

    TrialSample sample;
    size_t k = 0;
    sample.t = fields[k++];
    sample.poses.reserve(linkCount);
    for (size_t link = 0; link < linkCount; ++link) {
      Pose pose;
      pose.position = Vec3(fields[k], fields[k + 1], fields[k + 2]);
      k += 3;
      try {
        pose.orientation = Quaternion(fields[k], fields[k + 1], fields[k + 2],
                                      fields[k + 3]);
      } catch (const std::invalid_argument&) {
        throw TrialParseError("non-unit quaternion in sample line", offset);
      }
      k += 4;
      sample.poses.push_back(pose);
    }
    Vec6 left, right;
    for (int c = 0; c < 6; ++c) left[c] = fields[k++];
    for (int c = 0; c < 6; ++c) right[c] = fields[k++];
    sample.fLeft = SpatialForce::fromVector(left);
    sample.fRight = SpatialForce::fromVector(right);
    const double movingField = fields[k++];
    if (movingField != 0.0 && movingField != 1.0) {
      throw TrialParseError("moving flag must be 0 or 1", offset);
    }
    sample.moving = movingField == 1.0;
    record.samples.push_back(std::move(sample));

    offset = lineEnd + 1;
  }

  if (record.samples.size() != declaredSamples) {
    throw TrialParseError(
        "truncated trial: header declares " + std::to_string(declaredSamples) +
            " samples, file carries " + std::to_string(record.samples.size()),
        content.size());
  }
  record.validate();
  return record;
}

}  // namespace artopo
