// Copyright 2026 The empc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

fs::path work_dir()
{
    const fs::path d = fs::temp_directory_path() / "empc_cli_tests";
    fs::create_directories(d);
    return d;
}

int run(const std::string& args)
{
    const std::string cmd = std::string(EMPC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

fs::path short_config()
{
    const fs::path p = work_dir() / "short.cfg";
    std::ofstream(p) << "sim_duration = 3\nensemble = 40\n";
    return p;
}

} // namespace

TEST(Cli, SameSeedByteIdentical)
{
    const fs::path a = work_dir() / "seed_a", b = work_dir() / "seed_b";
    const std::string common = "terminal --seed 7 --no-plots --config " + short_config().string();
    ASSERT_EQ(run(common + " --out " + a.string()), 0);
    ASSERT_EQ(run(common + " --out " + b.string()), 0);
    const std::string csv = slurp(a / "terminal.csv");
    EXPECT_FALSE(csv.empty());
    EXPECT_EQ(csv, slurp(b / "terminal.csv"));
}

TEST(Cli, WorkerCountInvariant)
{
    const fs::path a = work_dir() / "w1", b = work_dir() / "w8";
    const std::string common = "terminal --no-plots --config " + short_config().string();
    ASSERT_EQ(run(common + " --workers 1 --out " + a.string()), 0);
    ASSERT_EQ(run(common + " --workers 8 --out " + b.string()), 0);
    EXPECT_EQ(slurp(a / "terminal.csv"), slurp(b / "terminal.csv"));
}

TEST(Cli, WritesPlots)
{
    const fs::path d = work_dir() / "plots";
    fs::remove_all(d);
    ASSERT_EQ(run("waypoints --config " + short_config().string() + " --out " + d.string()), 0);
    EXPECT_TRUE(fs::exists(d / "waypoints.csv"));
    EXPECT_TRUE(fs::exists(d / "waypoints_track_xy.svg"));
    EXPECT_TRUE(fs::exists(d / "waypoints_states.svg"));
}

TEST(Cli, AblationWritesBothRuns)
{
    const fs::path d = work_dir() / "ablation";
    ASSERT_EQ(run("ablation --no-plots --config " + short_config().string() + " --out " + d.string()), 0);
    EXPECT_TRUE(fs::exists(d / "ablation.csv"));
    EXPECT_TRUE(fs::exists(d / "ablation_baseline.csv"));
}

TEST(Cli, FlagsOverrideConfig)
{
    const fs::path d = work_dir() / "override";
    ASSERT_EQ(run("terminal --no-plots --config " + short_config().string() +
                  " --dt 0.5 --horizon 2 --ensemble 10 --rho 0.01 --out " + d.string()),
              0);
    const std::string csv = slurp(d / "terminal.csv");
    // 3 s at 0.5 s per cycle: header + 6 rows.
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
}

TEST(Cli, UsageErrorsExitTwo)
{
    EXPECT_EQ(run("terminal --rho -1"), 2);
    EXPECT_EQ(run("terminal --ensemble 1"), 2);
    EXPECT_EQ(run("terminal --bogus"), 2);
    EXPECT_EQ(run(""), 2);
    EXPECT_EQ(run("fly"), 2);
    EXPECT_EQ(run("terminal --config /nonexistent/empc.cfg"), 2);
    const fs::path bad = work_dir() / "bad.cfg";
    std::ofstream(bad) << "unknown_key = 1\n";
    EXPECT_EQ(run("terminal --config " + bad.string()), 2);
}

TEST(Cli, ValidateSucceeds)
{
    EXPECT_EQ(run("validate"), 0);
}

TEST(Cli, HelpExitsZero)
{
    EXPECT_EQ(run("--help"), 0);
}
