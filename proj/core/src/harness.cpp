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

#include "empc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "empc/errors.hpp"
#include "empc/forecast_model.hpp"

namespace empc {

void ExperimentConfig::validate() const
{
    params.validate();
    integrator.validate();
    controller.validate();
    if (!(sim_duration >= 0.0) || !std::isfinite(sim_duration)) {
        throw InvalidArgument("sim_duration must be finite and nonnegative");
    }
    if (!(trim >= 0.0)) throw InvalidArgument("trim must be nonnegative");
    if (rho.size() != 12 || !((rho.array() > 0.0).all())) {
        throw InvalidArgument("rho must have 12 positive components");
    }
    if (mode == ExperimentMode::Waypoints) {
        if (waypoints.empty()) throw InvalidArgument("waypoint mode needs at least one waypoint");
        if (!(waypoint_mae_threshold > 0.0)) throw InvalidArgument("MAE threshold must be positive");
    }
}

int ExperimentConfig::cycles() const
{
    return std::max(1, static_cast<int>(std::llround(sim_duration / integrator.dt)));
}

ExperimentConfig ExperimentConfig::terminal_defaults()
{
    ExperimentConfig cfg;
    cfg.name = "terminal";
    cfg.mode = ExperimentMode::Terminal;
    cfg.integrator.dt = 0.25;
    cfg.controller.horizon = 4;
    cfg.target(state::x) = 1.0;
    cfg.target(state::y) = 1.0;
    cfg.target(state::z) = 1.0;
    cfg.target(state::psi) = std::numbers::pi / 2.0;
    cfg.sim_duration = 25.0;
    cfg.controller.min_std = kPresetMinStd;
    return cfg;
}

ExperimentConfig ExperimentConfig::waypoint_defaults()
{
    ExperimentConfig cfg;
    cfg.name = "waypoints";
    cfg.mode = ExperimentMode::Waypoints;
    cfg.integrator.dt = 0.125;
    cfg.controller.horizon = 8;
    cfg.waypoints = {{0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
    cfg.sim_duration = 60.0;
    cfg.controller.min_std = kPresetMinStd;
    return cfg;
}

ExperimentConfig ExperimentConfig::ablation_defaults()
{
    ExperimentConfig cfg = waypoint_defaults();
    cfg.name = "ablation";
    cfg.rho(state::x) = 0.015;
    cfg.rho(state::y) = 0.015;
    return cfg;
}

double performance_mae(const QuadState& x, const QuadState& target)
{
    return (x - target).cwiseAbs().mean();
}

QuadState waypoint_target(const Eigen::Vector3d& position)
{
    QuadState t = QuadState::Zero();
    t.segment<3>(state::x) = position;
    return t;
}

namespace {

RunRecord run_loop(const ExperimentConfig& cfg)
{
    cfg.validate();
    const bool waypoint_mode = cfg.mode == ExperimentMode::Waypoints;

    // One model instance drives both the plant and every forecast member.
    const QuadrotorModel model(cfg.params, cfg.integrator);
    Rng rng(cfg.seed);

    int active = 0;
    PerformanceSpec spec;
    spec.rho = cfg.rho;
    spec.target = waypoint_mode ? waypoint_target(cfg.waypoints.front()) : cfg.target;

    RunRecord record;
    const int n_cycles = cfg.cycles();
    record.rows.reserve(static_cast<std::size_t>(n_cycles));

    QuadState x = cfg.initial_state;
    try {
        Ensemble prior = draw(Eigen::VectorXd::Constant(4, cfg.trim),
                              Eigen::VectorXd::Constant(4, cfg.controller.sigma0),
                              cfg.controller.members, rng);
        for (int n = 0; n < n_cycles; ++n) {
            const QuadState goal = spec.target;
            const double mae = performance_mae(x, goal);
            if (waypoint_mode && mae < cfg.waypoint_mae_threshold) {
                record.visits.push_back({n, active, mae});
                active = (active + 1) % static_cast<int>(cfg.waypoints.size());
                spec.target = waypoint_target(cfg.waypoints[static_cast<std::size_t>(active)]);
            }

            CycleResult cycle = control_cycle(x, prior, spec, cfg.controller, model, rng);

            RunRow row;
            row.t = n * cfg.integrator.dt;
            row.state = x;
            row.applied = cycle.applied;
            row.std = cycle.diagnostics.posterior_std;
            row.total_std = cycle.diagnostics.total_std;
            row.mae = mae;
            row.waypoint = active;
            record.rows.push_back(row);

            x = model.propagate(x, cycle.applied, 1);
            prior = std::move(cycle.next_prior);
        }
    } catch (const Error& e) {
        record.failure = e.what();
    }
    return record;
}

} // namespace

RunRecord run_terminal(const ExperimentConfig& cfg)
{
    if (cfg.mode != ExperimentMode::Terminal) throw InvalidArgument("run_terminal: config is not in terminal mode");
    return run_loop(cfg);
}

RunRecord run_waypoints(const ExperimentConfig& cfg)
{
    if (cfg.mode != ExperimentMode::Waypoints) throw InvalidArgument("run_waypoints: config is not in waypoint mode");
    return run_loop(cfg);
}

RunRecord run_experiment(const ExperimentConfig& cfg)
{
    return cfg.mode == ExperimentMode::Terminal ? run_terminal(cfg) : run_waypoints(cfg);
}

double cross_track_deviation(const Eigen::Vector3d& p, const Eigen::Vector3d& a,
                             const Eigen::Vector3d& b)
{
    const Eigen::Vector3d ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 == 0.0) return (p - a).norm();
    const double s = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return (p - (a + s * ab)).norm();
}

double max_cross_track(const RunRecord& record, const ExperimentConfig& cfg)
{
    if (cfg.waypoints.empty()) return 0.0;
    const auto n_wp = static_cast<int>(cfg.waypoints.size());
    double worst = 0.0;
    bool first_leg = true;
    for (const RunRow& row : record.rows) {
        if (row.waypoint != 0) first_leg = false;
        const Eigen::Vector3d b = cfg.waypoints[static_cast<std::size_t>(row.waypoint)];
        const Eigen::Vector3d a =
            first_leg ? Eigen::Vector3d(cfg.initial_state.segment<3>(state::x))
                      : cfg.waypoints[static_cast<std::size_t>((row.waypoint + n_wp - 1) % n_wp)];
        worst = std::max(worst, cross_track_deviation(row.state.segment<3>(state::x), a, b));
    }
    return worst;
}

} // namespace empc
