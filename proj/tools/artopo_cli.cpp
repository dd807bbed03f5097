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
//
// artopo command line: simulate exploration campaigns, estimate joint
// topologies from recorded trials, and summarize the results.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 runtime
// failure (partial outputs are left in place).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "artopo/campaign.h"

namespace {

using artopo::CampaignConfig;
using artopo::CampaignEstimate;
using artopo::CampaignSummary;
using artopo::TrialOutcome;

/// Parses a JSON config file with the same field names as CampaignConfig.
/// Unknown keys are rejected so typos do not silently fall back to
/// defaults.
CampaignConfig loadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config: cannot open '" + path + "'");
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config: " + path + ": " + e.what());
  }
  if (!j.is_object()) {
    throw std::invalid_argument("config: " + path + ": expected an object");
  }
  static const std::set<std::string> knownKeys = {
      "fixture",     "customFixturePath", "trials",
      "seed",        "duration",          "smoothingWindow",
      "parallelism", "outputDir",         "constrainedDirection"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (knownKeys.find(key) == knownKeys.end()) {
      throw std::invalid_argument("config: unknown key '" + key + "' in " +
                                  path);
    }
  }
  CampaignConfig config;
  try {
    if (j.contains("fixture")) {
      config.fixture =
          artopo::fixtureKindFromName(j.at("fixture").get<std::string>());
    }
    config.customFixturePath =
        j.value("customFixturePath", config.customFixturePath);
    config.trials = j.value("trials", config.trials);
    config.seed = j.value("seed", config.seed);
    config.duration = j.value("duration", config.duration);
    config.smoothingWindow = j.value("smoothingWindow", config.smoothingWindow);
    config.parallelism = j.value("parallelism", config.parallelism);
    config.outputDir = j.value("outputDir", config.outputDir);
    config.constrainedDirection =
        j.value("constrainedDirection", config.constrainedDirection);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config: " + path + ": " + e.what());
  }
  return config;
}

int runSimulate(const CampaignConfig& config) {
  const std::vector<TrialOutcome> outcomes = artopo::simulateCampaign(config);
  int moving = 0;
  int failed = 0;
  for (const TrialOutcome& outcome : outcomes) {
    if (outcome.failed) {
      failed += 1;
      std::fprintf(stderr, "trial %d failed: %s\n", outcome.index,
                   outcome.error.c_str());
    } else if (outcome.moving) {
      moving += 1;
    }
  }
  std::printf("wrote %zu trial(s) to %s (%d moving, %d failed)\n",
              outcomes.size(), config.outputDir.c_str(), moving, failed);
  return 0;
}

int runEstimate(const std::string& dir, int smoothingWindow) {
  const CampaignEstimate estimate =
      artopo::estimateCampaign(dir, smoothingWindow);
  for (const auto& [file, reason] : estimate.skipped) {
    std::fprintf(stderr, "skipped %s: %s\n", file.c_str(), reason.c_str());
  }
  std::printf(
      "estimated %zu trial(s), skipped %zu; wrote report.json and "
      "errors.csv in %s\n",
      estimate.trials.size(), estimate.skipped.size(), dir.c_str());
  return 0;
}

int runReport(const std::string& dir) {
  const CampaignSummary summary = artopo::summarizeCampaign(dir);
  std::fputs(artopo::renderSummary(summary).c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "artopo: estimate serial-chain joint topologies from recorded link "
      "poses and terminal wrenches"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "artopo 0.1.0");

  // simulate
  CLI::App* simulate =
      app.add_subcommand("simulate", "run a randomized exploration campaign");
  std::string configPath;
  std::string fixtureName = "revolute-demo";
  std::string fixturePath;
  int trials = 10;
  std::uint64_t seed = 0;
  double duration = 5.0;
  int smoothingWindow = 5;
  int parallelism = 1;
  std::string outputDir = ".";
  bool constrained = false;
  CLI::Option* optConfig = simulate->add_option(
      "--config", configPath,
      "JSON config file with the same field names as the flags");
  CLI::Option* optFixture = simulate->add_option(
      "--fixture", fixtureName, "revolute-demo, prismatic-demo or custom");
  CLI::Option* optFixturePath = simulate->add_option(
      "--fixture-path", fixturePath, "fixture/v1 JSON file for --fixture custom");
  CLI::Option* optTrials =
      simulate->add_option("--trials", trials, "number of trials (>= 1)");
  CLI::Option* optSeed =
      simulate->add_option("--seed", seed, "campaign seed; fans out per trial");
  CLI::Option* optDuration =
      simulate->add_option("--duration", duration, "trial length in seconds");
  CLI::Option* optWindow = simulate->add_option(
      "--smoothing-window", smoothingWindow,
      "derivative smoothing window (recorded for the estimate step)");
  CLI::Option* optParallelism = simulate->add_option(
      "--parallelism", parallelism, "worker threads; never changes results");
  CLI::Option* optOutputDir = simulate->add_option(
      "--output-dir", outputDir,
      "campaign directory (ARTOPO_OUTPUT_DIR overrides)");
  CLI::Option* optConstrained = simulate->add_flag(
      "--constrained", constrained,
      "excite the fixture's constrained components instead of its motion "
      "components");

  // estimate
  CLI::App* estimate = app.add_subcommand(
      "estimate", "estimate topologies for every trial in a directory");
  std::string estimateDir;
  int estimateWindow = 5;
  estimate->add_option("--dir", estimateDir, "campaign directory")
      ->required();
  estimate->add_option("--smoothing-window", estimateWindow,
                       "derivative smoothing window");

  // report
  CLI::App* report =
      app.add_subcommand("report", "summarize an estimated campaign");
  std::string reportDir;
  report->add_option("--dir", reportDir, "campaign directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (simulate->parsed()) {
      CampaignConfig config;
      if (optConfig->count() > 0) {
        config = loadConfigFile(configPath);
      }
      if (optFixture->count() > 0) {
        config.fixture = artopo::fixtureKindFromName(fixtureName);
      }
      if (optFixturePath->count() > 0) {
        config.customFixturePath = fixturePath;
      }
      if (optTrials->count() > 0) {
        config.trials = trials;
      }
      if (optSeed->count() > 0) {
        config.seed = seed;
      }
      if (optDuration->count() > 0) {
        config.duration = duration;
      }
      if (optWindow->count() > 0) {
        config.smoothingWindow = smoothingWindow;
      }
      if (optParallelism->count() > 0) {
        config.parallelism = parallelism;
      }
      if (optOutputDir->count() > 0) {
        config.outputDir = outputDir;
      }
      if (optConstrained->count() > 0) {
        config.constrainedDirection = constrained;
      }
      if (const char* env = std::getenv("ARTOPO_OUTPUT_DIR")) {
        config.outputDir = env;
      }
      config.validate();
      return runSimulate(config);
    }
    if (estimate->parsed()) {
      return runEstimate(estimateDir, estimateWindow);
    }
    return runReport(reportDir);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
