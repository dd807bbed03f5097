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
// Black-box tests of the artopo binary: verbs, exit codes, config file
// handling and the ARTOPO_OUTPUT_DIR override.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exitCode = -1;
  std::string output;
};

/// Runs the CLI through the shell, capturing stdout+stderr and the exit
/// code.
RunResult run(const std::string& args, const std::string& envPrefix = "") {
  const std::string outFile = ::testing::TempDir() + "cli_output.txt";
  const std::string command = envPrefix + std::string(ARTOPO_CLI_PATH) + " " +
                              args + " > " + outFile + " 2>&1";
  const int status = std::system(command.c_str());
  RunResult result;
  result.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(outFile);
  result.output = std::string((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
  return result;
}

std::string freshDir(const std::string& name) {
  const std::string dir = ::testing::TempDir() + name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(Cli, HelpAndVersionExitZero) {
  EXPECT_EQ(run("--help").exitCode, 0);
  EXPECT_EQ(run("simulate --help").exitCode, 0);
  const RunResult version = run("--version");
  EXPECT_EQ(version.exitCode, 0);
  EXPECT_NE(version.output.find("artopo"), std::string::npos);
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run("").exitCode, 1);
  EXPECT_EQ(run("simulate --fixture bogus").exitCode, 1);
  EXPECT_EQ(run("simulate --no-such-flag").exitCode, 1);
  EXPECT_EQ(run("simulate --trials 0").exitCode, 1);
  EXPECT_EQ(run("estimate").exitCode, 1) << "--dir is required";
  EXPECT_EQ(run("simulate --fixture custom").exitCode, 1)
      << "custom fixture requires --fixture-path";
}

TEST(Cli, RuntimeErrorsExitTwo) {
  const RunResult result = run("estimate --dir /nonexistent_artopo_dir");
  EXPECT_EQ(result.exitCode, 2);

  const std::string empty = freshDir("cli_empty/");
  const RunResult noTrials = run("estimate --dir " + empty);
  EXPECT_EQ(noTrials.exitCode, 2);
  EXPECT_NE(noTrials.output.find("no trials found"), std::string::npos);

  EXPECT_EQ(run("report --dir " + empty).exitCode, 2)
      << "report before estimate";
}

TEST(Cli, SimulateEstimateReportPipeline) {
  const std::string dir = freshDir("cli_pipeline/");
  const RunResult simulate =
      run("simulate --fixture revolute-demo --trials 2 --seed 11 "
          "--duration 3 --output-dir " +
          dir);
  ASSERT_EQ(simulate.exitCode, 0) << simulate.output;
  EXPECT_TRUE(fs::exists(dir + "/trial_0001.trial"));
  EXPECT_TRUE(fs::exists(dir + "/trial_0002.trial"));
  EXPECT_TRUE(fs::exists(dir + "/campaign.json"));

  const RunResult estimate = run("estimate --dir " + dir);
  ASSERT_EQ(estimate.exitCode, 0) << estimate.output;
  EXPECT_TRUE(fs::exists(dir + "/report.json"));
  EXPECT_TRUE(fs::exists(dir + "/errors.csv"));

  const RunResult report = run("report --dir " + dir);
  ASSERT_EQ(report.exitCode, 0) << report.output;
  EXPECT_NE(report.output.find("revolute"), std::string::npos);
  EXPECT_NE(report.output.find("correct"), std::string::npos);
}

TEST(Cli, ConfigFileDrivesSimulateAndFlagsOverrideIt) {
  const std::string dir = freshDir("cli_config/");
  const std::string configPath = dir + "config.json";
  std::ofstream(configPath)
      << "{\"fixture\": \"prismatic-demo\", \"trials\": 2, \"seed\": 3,\n"
      << " \"duration\": 2.0, \"outputDir\": \"" << dir << "from_config\"}\n";

  ASSERT_EQ(run("simulate --config " + configPath).exitCode, 0);
  EXPECT_TRUE(fs::exists(dir + "from_config/trial_0002.trial"));

  // An explicit flag wins over the config file value.
  ASSERT_EQ(run("simulate --config " + configPath + " --trials 1 "
                "--output-dir " +
                dir + "from_flag")
                .exitCode,
            0);
  EXPECT_TRUE(fs::exists(dir + "from_flag/trial_0001.trial"));
  EXPECT_FALSE(fs::exists(dir + "from_flag/trial_0002.trial"));
}

TEST(Cli, ConfigFileRejectsUnknownKeys) {
  const std::string dir = freshDir("cli_bad_config/");
  const std::string configPath = dir + "config.json";
  std::ofstream(configPath) << "{\"trails\": 3}";
  const RunResult result = run("simulate --config " + configPath);
  EXPECT_EQ(result.exitCode, 1);
  EXPECT_NE(result.output.find("trails"), std::string::npos);

  EXPECT_EQ(run("simulate --config " + dir + "missing.json").exitCode, 1);
}

TEST(Cli, EnvVarOverridesOutputDir) {
  const std::string dir = freshDir("cli_env/");
  const std::string ignored = freshDir("cli_env_ignored/");
  const RunResult result =
      run("simulate --trials 1 --duration 2 --output-dir " + ignored,
          "ARTOPO_OUTPUT_DIR=" + dir + " ");
  ASSERT_EQ(result.exitCode, 0) << result.output;
  EXPECT_TRUE(fs::exists(dir + "/trial_0001.trial"));
  EXPECT_FALSE(fs::exists(ignored + "/trial_0001.trial"));
}

TEST(Cli, CustomFixtureWithInvalidContentIsConfigError) {
  const std::string dir = freshDir("cli_custom_bad/");
  const std::string path = dir + "bad_fixture.json";
  // Non-unit joint axis: rejected by spec validation before any simulation.
  std::ofstream(path)
      << "{\"schema\": \"fixture/v1\", \"name\": \"bad\", \"trueTopology\": "
         "\"R\", \"motionComponents\": [\"fy\"], \"object\": {\"schema\": "
         "\"object/v1\", \"anchoredTerminal\": \"a\", \"basePose\": "
         "{\"quaternion\": [1,0,0,0], \"translation\": [0,0,0]}, \"links\": "
         "[{\"name\": \"a\", \"mass\": 1.0, \"com\": [0,0,0], "
         "\"inertiaAtCom\": [[0.01,0,0],[0,0.01,0],[0,0,0.01]], \"isHandle\": "
         "false}, {\"name\": \"b\", \"mass\": 1.0, \"com\": [0,0,0], "
         "\"inertiaAtCom\": [[0.01,0,0],[0,0.01,0],[0,0,0.01]], \"isHandle\": "
         "false}], \"joints\": [{\"index\": 1, \"axis\": [0,0,2], "
         "\"parentFrame\": {\"quaternion\": [1,0,0,0], \"translation\": "
         "[0.1,0,0]}, \"childFrame\": {\"quaternion\": [1,0,0,0], "
         "\"translation\": [-0.1,0,0]}, \"limits\": [0.0, 1.0], "
         "\"damping\": 0.0, \"staticFriction\": 0.0}]}}";
  const RunResult result = run("simulate --fixture custom --fixture-path " +
                               path + " --output-dir " + dir);
  EXPECT_EQ(result.exitCode, 1);
  EXPECT_FALSE(fs::exists(dir + "/trial_0001.trial"));
}

}  // namespace
