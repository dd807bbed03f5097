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
#include <string>
#include <utility>
#include <vector>

#include "artopo/fixtures.h"

namespace artopo {

enum class FixtureKind { RevoluteDemo, PrismaticDemo, Custom };

std::string fixtureKindName(FixtureKind kind);
/// Accepts "revolute-demo", "prismatic-demo", "custom"; throws
/// std::invalid_argument otherwise.
FixtureKind fixtureKindFromName(const std::string& name);

/// One batch of randomized exploration trials over a single fixture.
/// `seed` fans out to one independent deterministic stream per trial, so
/// results do not depend on `parallelism`.
struct CampaignConfig {
  FixtureKind fixture = FixtureKind::RevoluteDemo;
  /// fixture/v1 file, consulted only when fixture == Custom.
  std::string customFixturePath;
  int trials = 10;
  std::uint64_t seed = 0;
  double duration = 5.0;
  int smoothingWindow = 5;
  int parallelism = 1;
  std::string outputDir = ".";
  /// Excite the fixture's constrained components instead of its motion
  /// components (the null-hypothesis campaign; no breakaway expected).
  bool constrainedDirection = false;

  /// Throws std::invalid_argument naming the first invalid field.
  void validate() const;
};

/// Demo fixture or custom file per the config. Validates that the chosen
/// excitation mask is non-empty.
Fixture resolveFixture(const CampaignConfig& config);

struct TrialOutcome {
  int index = 1;
  /// Basename under outputDir, e.g. "trial_0001.trial"; empty when failed.
  std::string file;
  std::uint64_t trialSeed = 0;
  bool moving = false;
  bool failed = false;
  std::string error;
};

/// Simulates config.trials trials, writing trial_0001.trial .. trial_NNNN
/// .trial plus a campaign.json manifest (per-trial seeds, signals, the
/// fixture hash) into outputDir. A diverged trial is recorded as failed
/// and the campaign continues. Reruns with the same config are
/// byte-identical.
std::vector<TrialOutcome> simulateCampaign(const CampaignConfig& config);

struct CandidateError {
  std::string topology;
  double error = 0.0;
};

struct TrialEstimate {
  std::string file;
  std::string objectHash;
  /// Empty when the trial metadata carries no ground truth.
  std::string trueTopology;
  std::string selected;
  bool inconclusive = false;
  double motionFraction = 0.0;
  int residualCount = 0;
  std::vector<CandidateError> errors;
};

struct CampaignEstimate {
  std::vector<TrialEstimate> trials;
  /// (file, reason) for unreadable or unestimable trials.
  std::vector<std::pair<std::string, std::string>> skipped;
};

/// Estimates every *.trial file in inputDir (lexicographic order), writing
/// report.json and errors.csv beside them. Unreadable trials are listed
/// and skipped. Throws std::runtime_error("no trials found ...") when the
/// directory holds no trial files.
CampaignEstimate estimateCampaign(const std::string& inputDir,
                                  int smoothingWindow = 5);

struct FixtureSummary {
  std::string objectHash;
  std::string trueTopology;
  int trials = 0;
  int correct = 0;
  int wrong = 0;
  int inconclusive = 0;
  int unknownTruth = 0;
  /// Mean over conclusive multi-candidate trials of
  /// (second-smallest error) / (smallest error); 0 when empty.
  double meanSeparation = 0.0;
};

struct CampaignSummary {
  std::vector<FixtureSummary> fixtures;
  int skipped = 0;
};

/// Reads report.json written by estimateCampaign and aggregates confusion
/// counts per fixture hash.
CampaignSummary summarizeCampaign(const std::string& dir);

/// Human-readable per-fixture lines, e.g.
/// "revolute-ish R (hash 1a2b..): 9/10 correct, 1 inconclusive, ...".
std::string renderSummary(const CampaignSummary& summary);

}  // namespace artopo
