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

#include "artopo/campaign.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "artopo/estimator.h"
#include "artopo/model_io.h"
#include "artopo/simulator.h"

namespace artopo {
namespace {

namespace fs = std::filesystem;

/// Trials whose moving-sample fraction reaches this are kept; below it the
/// signal is redrawn (the object never broke away, so the trial carries no
/// articulation evidence).
constexpr double kMovingFraction = 0.05;
constexpr int kMaxSignalDraws = 20;

/// SplitMix64 step; fans the campaign seed out to per-trial streams that
/// are stable under any parallelism.
std::uint64_t mixSeed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + index * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string trialFileName(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "trial_%04d.trial", index);
  return buf;
}

std::string formatDouble(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

double movingFraction(const TrialRecord& record) {
  if (record.samples.empty()) {
    return 0.0;
  }
  std::size_t moving = 0;
  for (const TrialSample& sample : record.samples) {
    moving += sample.moving ? 1u : 0u;
  }
  return static_cast<double>(moving) /
         static_cast<double>(record.samples.size());
}

struct SimulatedTrial {
  TrialOutcome outcome;
  std::optional<SinusoidSpec> signal;
};

SimulatedTrial simulateOne(const Fixture& fixture, const CampaignConfig& cfg,
                           int index) {
  SimulatedTrial result;
  result.outcome.index = index;
  result.outcome.trialSeed = mixSeed(cfg.seed, static_cast<std::uint64_t>(index));

  const ComponentMask mask =
      cfg.constrainedDirection ? fixture.constrainedMask : fixture.motionMask;
  SimConfig sim;
  sim.duration = cfg.duration;
  sim.seed = result.outcome.trialSeed;

  std::mt19937_64 rng(result.outcome.trialSeed);
  try {
    TrialRecord record;
    double fraction = 0.0;
    // Constrained-direction trials are not expected to move, so a single
    // draw suffices; otherwise redraw until the object breaks away.
    const int draws = cfg.constrainedDirection ? 1 : kMaxSignalDraws;
    for (int draw = 0; draw < draws; ++draw) {
      const SinusoidSpec signal = sampleSinusoid(rng, mask);
      record = runTrial(fixture.object, fixture.trueTopology, signal, sim,
                        fixture.initialQ);
      result.signal = signal;
      fraction = movingFraction(record);
      if (cfg.constrainedDirection || fraction >= kMovingFraction) {
        break;
      }
    }
    result.outcome.moving = fraction >= kMovingFraction;
    result.outcome.file = trialFileName(index);
    writeTrial(record,
               (fs::path(cfg.outputDir) / result.outcome.file).string());
  } catch (const DivergenceError& e) {
    result.outcome.failed = true;
    result.outcome.file.clear();
    result.outcome.error = e.what();
  } catch (const std::exception& e) {
    result.outcome.failed = true;
    result.outcome.file.clear();
    result.outcome.error = e.what();
  }
  return result;
}

nlohmann::json manifestJson(const CampaignConfig& cfg, const Fixture& fixture,
                            const std::vector<SimulatedTrial>& trials) {
  nlohmann::json j;
  j["schema"] = "campaign/v1";
  j["fixture"] = fixtureKindName(cfg.fixture);
  j["fixtureName"] = fixture.name;
  j["objectHash"] = hashHex(specHash(fixture.object));
  j["trueTopology"] = fixture.trueTopology.label();
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  j["duration"] = cfg.duration;
  j["dt"] = 0.001;
  j["smoothingWindow"] = cfg.smoothingWindow;
  j["constrainedDirection"] = cfg.constrainedDirection;
  nlohmann::json entries = nlohmann::json::array();
  for (const SimulatedTrial& trial : trials) {
    nlohmann::json entry;
    entry["index"] = trial.outcome.index;
    entry["file"] = trial.outcome.file;
    entry["seed"] = trial.outcome.trialSeed;
    entry["moving"] = trial.outcome.moving;
    entry["failed"] = trial.outcome.failed;
    if (trial.outcome.failed) {
      entry["error"] = trial.outcome.error;
    }
    entries.push_back(std::move(entry));
  }
  j["trialEntries"] = std::move(entries);
  return j;
}

void writeTextFile(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  out << content;
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

}  // namespace

std::string fixtureKindName(FixtureKind kind) {
  switch (kind) {
    case FixtureKind::RevoluteDemo:
      return "revolute-demo";
    case FixtureKind::PrismaticDemo:
      return "prismatic-demo";
    case FixtureKind::Custom:
      return "custom";
  }
  throw std::invalid_argument("unknown fixture kind");
}

FixtureKind fixtureKindFromName(const std::string& name) {
  if (name == "revolute-demo") {
    return FixtureKind::RevoluteDemo;
  }
  if (name == "prismatic-demo") {
    return FixtureKind::PrismaticDemo;
  }
  if (name == "custom") {
    return FixtureKind::Custom;
  }
  throw std::invalid_argument("unknown fixture '" + name +
                              "' (expected revolute-demo, prismatic-demo or "
                              "custom)");
}

void CampaignConfig::validate() const {
  if (trials < 1) {
    throw std::invalid_argument("campaign: trials must be >= 1");
  }
  if (!(duration > 0.0)) {
    throw std::invalid_argument("campaign: duration must be > 0");
  }
  if (smoothingWindow < 1) {
    throw std::invalid_argument("campaign: smoothingWindow must be >= 1");
  }
  if (parallelism < 1) {
    throw std::invalid_argument("campaign: parallelism must be >= 1");
  }
  if (outputDir.empty()) {
    throw std::invalid_argument("campaign: outputDir must not be empty");
  }
  if (fixture == FixtureKind::Custom && customFixturePath.empty()) {
    throw std::invalid_argument(
        "campaign: custom fixture requires a fixture file path");
  }
}

Fixture resolveFixture(const CampaignConfig& config) {
  Fixture fixture;
  switch (config.fixture) {
    case FixtureKind::RevoluteDemo:
      fixture = revoluteDemo();
      break;
    case FixtureKind::PrismaticDemo:
      fixture = prismaticDemo();
      break;
    case FixtureKind::Custom:
      fixture = loadFixture(config.customFixturePath);
      break;
  }
  const ComponentMask mask = config.constrainedDirection
                                 ? fixture.constrainedMask
                                 : fixture.motionMask;
  if (mask == 0) {
    throw std::invalid_argument(
        "campaign: fixture '" + fixture.name + "' has no " +
        (config.constrainedDirection ? "constrained" : "motion") +
        " components to excite");
  }
  return fixture;
}

std::vector<TrialOutcome> simulateCampaign(const CampaignConfig& config) {
  config.validate();
  const Fixture fixture = resolveFixture(config);
  fs::create_directories(config.outputDir);

  std::vector<SimulatedTrial> trials(static_cast<std::size_t>(config.trials));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int i = next.fetch_add(1); i < config.trials; i = next.fetch_add(1)) {
      trials[static_cast<std::size_t>(i)] = simulateOne(fixture, config, i + 1);
    }
  };
  const int threadCount = std::min(config.parallelism, config.trials);
  if (threadCount <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threadCount));
    for (int i = 0; i < threadCount; ++i) {
      pool.emplace_back(worker);
    }
    for (std::thread& t : pool) {
      t.join();
    }
  }

  writeTextFile(fs::path(config.outputDir) / "campaign.json",
                manifestJson(config, fixture, trials).dump(2) + "\n");

  std::vector<TrialOutcome> outcomes;
  outcomes.reserve(trials.size());
  for (SimulatedTrial& trial : trials) {
    outcomes.push_back(std::move(trial.outcome));
  }
  return outcomes;
}

CampaignEstimate estimateCampaign(const std::string& inputDir,
                                  int smoothingWindow) {
  if (smoothingWindow < 1) {
    throw std::invalid_argument("estimate: smoothingWindow must be >= 1");
  }
  if (!fs::is_directory(inputDir)) {
    throw std::runtime_error("estimate: '" + inputDir +
                             "' is not a directory");
  }
  std::vector<fs::path> files;
  for (const fs::directory_entry& entry : fs::directory_iterator(inputDir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".trial") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw std::runtime_error("no trials found in '" + inputDir + "'");
  }

  EstimatorConfig estimatorConfig;
  estimatorConfig.smoothingWindow = smoothingWindow;

  CampaignEstimate result;
  for (const fs::path& file : files) {
    const std::string name = file.filename().string();
    try {
      const TrialRecord record = readTrial(file.string());
      const std::vector<Topology> candidates =
          enumerateTopologies(record.metadata.object.jointCount());
      const EstimationReport report = selectTopology(
          record, record.metadata.object, candidates, estimatorConfig);

      TrialEstimate estimate;
      estimate.file = name;
      estimate.objectHash = record.metadata.objectHash;
      if (record.metadata.trueTopology.has_value()) {
        estimate.trueTopology = record.metadata.trueTopology->label();
      }
      estimate.selected = report.selected.label();
      estimate.inconclusive = report.inconclusive;
      estimate.motionFraction = report.motionFraction;
      estimate.residualCount =
          static_cast<int>(report.errors.front().perSampleResiduals.size());
      for (const HypothesisError& hypothesis : report.errors) {
        estimate.errors.push_back(
            {hypothesis.topology.label(), hypothesis.error});
      }
      result.trials.push_back(std::move(estimate));
    } catch (const std::exception& e) {
      result.skipped.emplace_back(name, e.what());
    }
  }

  // errors.csv: one row per (trial, candidate), plottable as-is.
  std::string csv;
  csv += "# artopo errors.csv v1: trial,candidate,error,selected,"
         "inconclusive\n";
  csv += "trial,candidate,error,selected,inconclusive\n";
  for (const TrialEstimate& trial : result.trials) {
    for (const CandidateError& candidate : trial.errors) {
      csv += trial.file;
      csv += ',';
      csv += candidate.topology.empty() ? "-" : candidate.topology;
      csv += ',';
      csv += formatDouble(candidate.error);
      csv += ',';
      csv += (candidate.topology == trial.selected) ? '1' : '0';
      csv += ',';
      csv += trial.inconclusive ? '1' : '0';
      csv += '\n';
    }
  }
  writeTextFile(fs::path(inputDir) / "errors.csv", csv);

  nlohmann::json report;
  report["schema"] = "report/v1";
  report["smoothingWindow"] = smoothingWindow;
  nlohmann::json trialsJson = nlohmann::json::array();
  for (const TrialEstimate& trial : result.trials) {
    nlohmann::json t;
    t["file"] = trial.file;
    t["objectHash"] = trial.objectHash;
    t["trueTopology"] = trial.trueTopology;
    t["selected"] = trial.selected;
    t["inconclusive"] = trial.inconclusive;
    t["motionFraction"] = trial.motionFraction;
    t["residualCount"] = trial.residualCount;
    nlohmann::json errors = nlohmann::json::array();
    for (const CandidateError& candidate : trial.errors) {
      errors.push_back({{"topology", candidate.topology},
                        {"error", candidate.error}});
    }
    t["errors"] = std::move(errors);
    trialsJson.push_back(std::move(t));
  }
  report["trials"] = std::move(trialsJson);
  nlohmann::json skippedJson = nlohmann::json::array();
  for (const auto& [file, reason] : result.skipped) {
    skippedJson.push_back({{"file", file}, {"reason", reason}});
  }
  report["skipped"] = std::move(skippedJson);
  writeTextFile(fs::path(inputDir) / "report.json", report.dump(2) + "\n");

  return result;
}

CampaignSummary summarizeCampaign(const std::string& dir) {
  const fs::path reportPath = fs::path(dir) / "report.json";
  std::ifstream in(reportPath);
  if (!in) {
    throw std::runtime_error("report: cannot open " + reportPath.string() +
                             " (run estimate first)");
  }
  nlohmann::json report;
  try {
    in >> report;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("report: " + reportPath.string() + ": " +
                             e.what());
  }
  if (report.value("schema", "") != "report/v1") {
    throw std::runtime_error("report: expected schema report/v1 in " +
                             reportPath.string());
  }

  CampaignSummary summary;
  summary.skipped = static_cast<int>(report.value("skipped",
                                                  nlohmann::json::array())
                                         .size());
  std::vector<std::vector<double>> separations;
  for (const nlohmann::json& trial : report.at("trials")) {
    const std::string hash = trial.value("objectHash", "");
    auto it = std::find_if(summary.fixtures.begin(), summary.fixtures.end(),
                           [&](const FixtureSummary& f) {
                             return f.objectHash == hash;
                           });
    if (it == summary.fixtures.end()) {
      FixtureSummary fresh;
      fresh.objectHash = hash;
      fresh.trueTopology = trial.value("trueTopology", "");
      summary.fixtures.push_back(fresh);
      separations.emplace_back();
      it = std::prev(summary.fixtures.end());
    }
    FixtureSummary& fixture = *it;
    std::vector<double>& seps =
        separations[static_cast<std::size_t>(it - summary.fixtures.begin())];

    fixture.trials += 1;
    const bool inconclusive = trial.value("inconclusive", false);
    const std::string truth = trial.value("trueTopology", "");
    const std::string selected = trial.value("selected", "");
    if (inconclusive) {
      fixture.inconclusive += 1;
    } else if (truth.empty()) {
      fixture.unknownTruth += 1;
    } else if (selected == truth) {
      fixture.correct += 1;
    } else {
      fixture.wrong += 1;
    }

    std::vector<double> errors;
    for (const nlohmann::json& candidate : trial.at("errors")) {
      errors.push_back(candidate.at("error").get<double>());
    }
    if (!inconclusive && errors.size() >= 2) {
      std::sort(errors.begin(), errors.end());
      if (errors[0] > 0.0) {
        seps.push_back(errors[1] / errors[0]);
      }
    }
  }
  for (std::size_t i = 0; i < summary.fixtures.size(); ++i) {
    const std::vector<double>& seps = separations[i];
    if (!seps.empty()) {
      double total = 0.0;
      for (double s : seps) {
        total += s;
      }
      summary.fixtures[i].meanSeparation =
          total / static_cast<double>(seps.size());
    }
  }
  return summary;
}

std::string renderSummary(const CampaignSummary& summary) {
  std::string text;
  for (const FixtureSummary& fixture : summary.fixtures) {
    std::string label = fixture.trueTopology;
    if (label == "R") {
      label = "revolute";
    } else if (label == "P") {
      label = "prismatic";
    } else if (label.empty()) {
      label = "free-body";
    }
    char line[256];
    std::snprintf(line, sizeof(line),
                  "%s (hash %s): %d/%d correct, %d wrong, %d inconclusive",
                  label.c_str(), fixture.objectHash.c_str(), fixture.correct,
                  fixture.trials, fixture.wrong, fixture.inconclusive);
    text += line;
    if (fixture.unknownTruth > 0) {
      std::snprintf(line, sizeof(line), ", %d without ground truth",
                    fixture.unknownTruth);
      text += line;
    }
    if (fixture.meanSeparation > 0.0) {
      std::snprintf(line, sizeof(line), "; mean error separation %.1fx",
                    fixture.meanSeparation);
      text += line;
    }
    text += '\n';
  }
  if (summary.skipped > 0) {
    char line[128];
    std::snprintf(line, sizeof(line), "skipped %d unreadable trial file(s)\n",
                  summary.skipped);
    text += line;
  }
  return text;
}

}  // namespace artopo
