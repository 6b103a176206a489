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

#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include <gtest/gtest.h>

#include "empc/errors.hpp"
#include "empc/harness.hpp"
#include "empc/plots.hpp"

namespace {

namespace fs = std::filesystem;

empc::RunRecord tiny_record(int rows)
{
    empc::RunRecord rec;
    for (int n = 0; n < rows; ++n) {
        empc::RunRow r;
        r.t = 0.25 * n;
        r.state(0) = 0.1 * n;
        r.state(2) = 0.05 * n;
        r.applied.setConstant(4.9 + 0.01 * n);
        r.std.setConstant(0.01);
        r.total_std = 0.02;
        rec.rows.push_back(r);
    }
    return rec;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

TEST(Plots, TerminalWritesThreeFigures)
{
    const fs::path dir = fs::temp_directory_path() / "empc_plot_terminal";
    fs::remove_all(dir);
    auto cfg = empc::ExperimentConfig::terminal_defaults();
    cfg.name = "exp1";
    const auto files = empc::emit_plots(tiny_record(10), cfg, dir);
    ASSERT_EQ(files.size(), 3u);
    EXPECT_EQ(files[0].filename(), "exp1_states.svg");
    EXPECT_EQ(files[1].filename(), "exp1_controls.svg");
    EXPECT_EQ(files[2].filename(), "exp1_std.svg");
    for (const auto& f : files) {
        const std::string s = slurp(f);
        EXPECT_TRUE(s.starts_with("<?xml") || s.starts_with("<svg")) << f;
        EXPECT_NE(s.find("</svg>"), std::string::npos);
    }
    EXPECT_EQ(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}), 3);
}

TEST(Plots, WaypointAddsTrackProjections)
{
    const fs::path dir = fs::temp_directory_path() / "empc_plot_waypoints";
    fs::remove_all(dir);
    auto cfg = empc::ExperimentConfig::waypoint_defaults();
    cfg.name = "exp2";
    const auto files = empc::emit_plots(tiny_record(10), cfg, dir);
    ASSERT_EQ(files.size(), 7u);
    EXPECT_EQ(files[3].filename(), "exp2_track_3d.svg");
    EXPECT_EQ(files[4].filename(), "exp2_track_xy.svg");
    EXPECT_EQ(files[5].filename(), "exp2_track_xz.svg");
    EXPECT_EQ(files[6].filename(), "exp2_track_yz.svg");
}

TEST(Plots, OutputIsDeterministic)
{
    const fs::path a = fs::temp_directory_path() / "empc_plot_a";
    const fs::path b = fs::temp_directory_path() / "empc_plot_b";
    const auto cfg = empc::ExperimentConfig::waypoint_defaults();
    const auto fa = empc::emit_plots(tiny_record(20), cfg, a);
    const auto fb = empc::emit_plots(tiny_record(20), cfg, b);
    for (std::size_t i = 0; i < fa.size(); ++i) EXPECT_EQ(slurp(fa[i]), slurp(fb[i]));
}

TEST(Plots, EmptyRecordRejected)
{
    EXPECT_THROW(empc::emit_plots(empc::RunRecord{}, empc::ExperimentConfig::terminal_defaults(),
                                  fs::temp_directory_path() / "empc_plot_empty"),
                 empc::InvalidArgument);
}

TEST(Plots, SingleRowRecord)
{
    const auto files = empc::emit_plots(tiny_record(1), empc::ExperimentConfig::terminal_defaults(),
                                        fs::temp_directory_path() / "empc_plot_single");
    for (const auto& f : files) EXPECT_EQ(slurp(f).find("nan"), std::string::npos) << f;
}
