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

// empc: identical-twin ensemble MPC experiments on a simulated quadrotor.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "empc/config_file.hpp"
#include "empc/csv.hpp"
#include "empc/errors.hpp"
#include "empc/harness.hpp"
#include "empc/plots.hpp"
#include "empc/validation.hpp"

namespace {

constexpr int kExitRunFailed = 1;
constexpr int kExitUsage = 2;

struct Overrides {
    std::optional<std::string> config;
    std::optional<std::string> seed;
    std::optional<std::string> out;
    std::optional<std::string> ensemble;
    std::optional<std::string> horizon;
    std::optional<std::string> dt;
    std::optional<std::string> rho;
    std::optional<std::string> workers;
    bool no_plots = false;
};

void add_run_options(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--config", o.config, "flat key = value file overriding the defaults");
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--ensemble", o.ensemble, "ensemble size E");
    cmd->add_option("--horizon", o.horizon, "horizon N in control cycles");
    cmd->add_option("--dt", o.dt, "control cycle length in seconds");
    cmd->add_option("--rho", o.rho, "performance tolerance (one value or 12 comma-separated)");
    cmd->add_option("--workers", o.workers, "threads used for the ensemble forecast");
    cmd->add_flag("--no-plots", o.no_plots, "skip SVG output");
}

// Defaults, then the config file, then individual flags.
empc::ExperimentConfig build_config(empc::ExperimentConfig cfg, const Overrides& o)
{
    if (o.config) empc::apply_config_file(cfg, *o.config);
    const auto set = [&](const char* key, const std::optional<std::string>& v) {
        if (v) empc::set_config_value(cfg, key, *v);
    };
    set("seed", o.seed);
    set("out", o.out);
    set("ensemble", o.ensemble);
    set("horizon", o.horizon);
    set("dt", o.dt);
    set("rho", o.rho);
    set("workers", o.workers);
    try {
        cfg.validate();
    } catch (const empc::InvalidArgument& e) {
        throw empc::ConfigError(e.what());
    }
    return cfg;
}

void print_summary(const empc::ExperimentConfig& cfg, const empc::RunRecord& rec)
{
    if (rec.rows.empty()) return;
    const auto& last = rec.rows.back();
    std::printf("%s: %zu cycles, final position (%.4f, %.4f, %.4f), yaw %.4f, MAE %.3g, total std %.3g\n",
                cfg.name.c_str(), rec.rows.size(), last.state(0), last.state(1), last.state(2),
                last.state(5), last.mae, last.total_std);
    if (cfg.mode == empc::ExperimentMode::Waypoints) {
        std::printf("%s: %zu waypoint visits, max cross-track deviation %.4g m\n", cfg.name.c_str(),
                    rec.visits.size(), empc::max_cross_track(rec, cfg));
        for (const auto& v : rec.visits) {
            std::printf("  waypoint %d reached at t = %.3f s (MAE %.3g)\n", v.waypoint,
                        v.cycle * cfg.integrator.dt, v.mae);
        }
    }
}

// Runs, writes <out>/<name>.csv (and plots); the CSV is written even when
// the run aborted part-way.
int run_and_write(const empc::ExperimentConfig& cfg, bool plots)
{
    const empc::RunRecord rec = empc::run_experiment(cfg);
    std::filesystem::create_directories(cfg.output_dir);
    const auto csv = cfg.output_dir / (cfg.name + ".csv");
    empc::write_csv(rec, csv);
    std::printf("wrote %s\n", csv.string().c_str());
    if (plots && !rec.rows.empty()) {
        for (const auto& p : empc::emit_plots(rec, cfg, cfg.output_dir)) {
            std::printf("wrote %s\n", p.string().c_str());
        }
    }
    print_summary(cfg, rec);
    if (rec.failure) {
        std::fprintf(stderr, "error: %s aborted: %s\n", cfg.name.c_str(), rec.failure->c_str());
        return kExitRunFailed;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Ensemble model predictive control of a simulated quadrotor"};
    app.require_subcommand(1);

    Overrides terminal_opts, waypoint_opts, ablation_opts;
    auto* terminal = app.add_subcommand("terminal", "climb, move and yaw to a fixed target");
    auto* waypoints = app.add_subcommand("waypoints", "fly a closed square of waypoints");
    auto* ablation = app.add_subcommand("ablation", "waypoint run with relaxed x/y tolerance vs baseline");
    auto* validate = app.add_subcommand("validate", "run the built-in property checks");
    add_run_options(terminal, terminal_opts);
    add_run_options(waypoints, waypoint_opts);
    add_run_options(ablation, ablation_opts);
    double relaxed = 0.015;
    ablation->add_option("--relaxed-rho", relaxed, "x/y tolerance for the degraded run");
    unsigned check_seed = 1;
    validate->add_option("--seed", check_seed, "seed for randomized checks");

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
        return kExitUsage;
    }

    try {
        if (*validate) {
            return empc::report(empc::run_property_checks(check_seed), std::cout) ? 0 : kExitRunFailed;
        }
        if (*terminal) {
            const auto cfg = build_config(empc::ExperimentConfig::terminal_defaults(), terminal_opts);
            return run_and_write(cfg, !terminal_opts.no_plots);
        }
        if (*waypoints) {
            const auto cfg = build_config(empc::ExperimentConfig::waypoint_defaults(), waypoint_opts);
            return run_and_write(cfg, !waypoint_opts.no_plots);
        }
        if (*ablation) {
            if (!(relaxed > 0.0)) throw empc::ConfigError("--relaxed-rho must be positive");
            auto baseline = build_config(empc::ExperimentConfig::waypoint_defaults(), ablation_opts);
            baseline.name = "ablation_baseline";
            auto degraded = baseline;
            degraded.name = "ablation";
            degraded.rho(empc::state::x) = relaxed;
            degraded.rho(empc::state::y) = relaxed;
            const int rc_base = run_and_write(baseline, !ablation_opts.no_plots);
            const int rc_deg = run_and_write(degraded, !ablation_opts.no_plots);
            return rc_base != 0 ? rc_base : rc_deg;
        }
    } catch (const empc::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRunFailed;
    }
    return kExitUsage;
}
