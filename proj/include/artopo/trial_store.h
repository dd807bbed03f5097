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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "artopo/exploration.h"
#include "artopo/object_model.h"
#include "artopo/spatial.h"

namespace artopo {

/// One recorded instant: link poses in the inertial frame (anchored link
/// first) and the wrenches acting ON the object through both terminal
/// links, each expressed in its own link frame.
struct TrialSample {
  double t = 0.0;
  std::vector<Pose> poses;
  SpatialForce fLeft;
  SpatialForce fRight;
  bool moving = false;
};

/// Self-describing trial header: embeds the full object spec (so the
/// estimator needs no out-of-band fixture file) along with its hash, the
/// gravity vector the trial was simulated under, and provenance fields.
struct TrialMetadata {
  std::string schema = "trial/v1";
  ObjectSpec object;
  std::string objectHash;
  double dt = 0.0;
  std::uint64_t seed = 0;
  Vec3 gravity = Vec3(0.0, 0.0, -9.81);
  std::optional<Topology> trueTopology;
  std::optional<SinusoidSpec> signal;
};

struct TrialRecord {
  TrialMetadata metadata;
  std::vector<TrialSample> samples;

  /// Throws std::invalid_argument on the first violated invariant:
  /// fewer than 2 samples, non-uniform or non-monotone time, pose count
  /// drift, or non-finite values.
  void validate() const;
};

/// Raised by readTrial with the byte offset of the offending content.
class TrialParseError : public std::runtime_error {
 public:
  TrialParseError(const std::string& message, std::size_t byteOffset);
  std::size_t byteOffset() const { return byteOffset_; }

 private:
  std::size_t byteOffset_;
};

/// Writes the record in the trial/v1 single-file text format (JSON header
/// line followed by one fixed-order numeric line per sample, 17
/// significant digits). Quaternions are sign-canonicalized (w >= 0) on
/// write. Validates first; refuses to write invalid records.
void writeTrial(const TrialRecord& record, const std::string& path);

/// Parses and validates a trial/v1 file. Schema mismatch, malformed
/// content (with byte offset), and non-monotone time are errors.
TrialRecord readTrial(const std::string& path);

}  // namespace artopo
