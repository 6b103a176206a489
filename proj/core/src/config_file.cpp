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

#include "empc/config_file.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "empc/errors.hpp"

namespace empc {

namespace {

constexpr std::array<std::string_view, 12> kStateNames = {
    "x", "y", "z", "phi", "theta", "psi", "vx", "vy", "vz", "dphi", "dtheta", "dpsi"};

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why)
{
    throw ConfigError("invalid value '" + std::string(value) + "' for '" + std::string(key) + "': " +
                      std::string(why));
}

double to_double(std::string_view key, std::string_view value)
{
    const auto v = trim(value);
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || res.ec != std::errc() || res.ptr != v.data() + v.size()) {
        bad_value(key, value, "not a number");
    }
    return out;
}

long long to_integer(std::string_view key, std::string_view value)
{
    const auto v = trim(value);
    long long out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || res.ec != std::errc() || res.ptr != v.data() + v.size()) {
        bad_value(key, value, "not an integer");
    }
    return out;
}

bool to_bool(std::string_view key, std::string_view value)
{
    const auto v = trim(value);
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    bad_value(key, value, "expected true/false");
}

std::vector<double> to_list(std::string_view key, std::string_view value, char sep = ',')
{
    std::vector<double> out;
    std::string_view rest = value;
    for (;;) {
        const auto pos = rest.find(sep);
        out.push_back(to_double(key, rest.substr(0, pos)));
        if (pos == std::string_view::npos) break;
        rest.remove_prefix(pos + 1);
    }
    return out;
}

int state_index(std::string_view key, std::string_view name)
{
    for (std::size_t i = 0; i < kStateNames.size(); ++i) {
        if (kStateNames[i] == name) return static_cast<int>(i);
    }
    throw ConfigError("unknown state component in '" + std::string(key) + "'");
}

double positive(std::string_view key, std::string_view value)
{
    const double v = to_double(key, value);
    if (!(v > 0.0)) bad_value(key, value, "must be positive");
    return v;
}

double nonnegative(std::string_view key, std::string_view value)
{
    const double v = to_double(key, value);
    if (!(v >= 0.0)) bad_value(key, value, "must be nonnegative");
    return v;
}

} // namespace

void set_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value)
{
    key = trim(key);
    value = trim(value);
    auto& ctl = cfg.controller;
    auto& p = cfg.params;

    if (key == "name") {
        if (value.empty() || value.find_first_of("/\\") != std::string_view::npos) {
            bad_value(key, value, "must be a plain file-name stem");
        }
        cfg.name = std::string(value);
    } else if (key == "seed") {
        const long long s = to_integer(key, value);
        if (s < 0) bad_value(key, value, "must be nonnegative");
        cfg.seed = static_cast<std::uint64_t>(s);
    } else if (key == "ensemble") {
        const long long e = to_integer(key, value);
        if (e < 2) bad_value(key, value, "ensemble size must be >= 2");
        ctl.members = static_cast<Eigen::Index>(e);
    } else if (key == "horizon") {
        const long long n = to_integer(key, value);
        if (n < 1) bad_value(key, value, "horizon must be >= 1");
        ctl.horizon = static_cast<int>(n);
    } else if (key == "dt") {
        cfg.integrator.dt = positive(key, value);
    } else if (key == "substeps") {
        const long long n = to_integer(key, value);
        if (n < 1) bad_value(key, value, "must be >= 1");
        cfg.integrator.substeps = static_cast<int>(n);
    } else if (key == "sigma0") {
        ctl.sigma0 = positive(key, value);
    } else if (key == "rho") {
        const auto v = to_list(key, value);
        for (double r : v) {
            if (!(r > 0.0)) bad_value(key, value, "tolerances must be positive");
        }
        if (v.size() == 1) {
            cfg.rho.setConstant(12, v.front());
        } else if (v.size() == 12) {
            cfg.rho = Eigen::Map<const Eigen::VectorXd>(v.data(), 12);
        } else {
            bad_value(key, value, "expected 1 or 12 values");
        }
    } else if (key.starts_with("rho.")) {
        cfg.rho(state_index(key, key.substr(4))) = positive(key, value);
    } else if (key == "target") {
        const auto v = to_list(key, value);
        if (v.size() != 12) bad_value(key, value, "expected 12 values");
        cfg.target = Eigen::Map<const QuadState>(v.data());
    } else if (key.starts_with("target.")) {
        cfg.target(state_index(key, key.substr(7))) = to_double(key, value);
    } else if (key == "waypoints") {
        std::vector<Eigen::Vector3d> wps;
        std::string_view rest = value;
        for (;;) {
            const auto pos = rest.find(';');
            const auto part = trim(rest.substr(0, pos));
            std::vector<double> xyz;
            std::istringstream in{std::string(part)};
            for (std::string tok; in >> tok;) xyz.push_back(to_double(key, tok));
            if (xyz.size() != 3) bad_value(key, value, "each waypoint needs 3 coordinates");
            wps.emplace_back(xyz[0], xyz[1], xyz[2]);
            if (pos == std::string_view::npos) break;
            rest.remove_prefix(pos + 1);
        }
        cfg.waypoints = std::move(wps);
    } else if (key == "trim") {
        cfg.trim = nonnegative(key, value);
    } else if (key == "selection") {
        if (value == "median") {
            ctl.selection = SelectionRule::median();
        } else if (value == "mean") {
            ctl.selection = SelectionRule::mean();
        } else if (value.starts_with("member:")) {
            const long long e = to_integer(key, value.substr(7));
            if (e < 0) bad_value(key, value, "member index must be nonnegative");
            ctl.selection = SelectionRule::of_member(static_cast<Eigen::Index>(e));
        } else {
            bad_value(key, value, "expected median, mean or member:<index>");
        }
    } else if (key == "perturb_targets") {
        ctl.perturb_targets = to_bool(key, value);
    } else if (key == "svd_trunc") {
        const double v = to_double(key, value);
        if (!(v >= 0.0 && v < 1.0)) bad_value(key, value, "must lie in [0, 1)");
        ctl.svd_trunc = v;
    } else if (key == "inflation") {
        ctl.inflation = nonnegative(key, value);
    } else if (key == "min_std") {
        ctl.min_std = nonnegative(key, value);
    } else if (key == "update_form") {
        if (value == "sqrt") ctl.form = UpdateForm::SquareRoot;
        else if (value == "direct") ctl.form = UpdateForm::Direct;
        else bad_value(key, value, "expected sqrt or direct");
    } else if (key == "workers") {
        const long long n = to_integer(key, value);
        if (n < 1) bad_value(key, value, "must be >= 1");
        ctl.workers = static_cast<int>(n);
    } else if (key == "sim_duration") {
        cfg.sim_duration = nonnegative(key, value);
    } else if (key == "mae_threshold") {
        cfg.waypoint_mae_threshold = positive(key, value);
    } else if (key == "mass") {
        p.m = positive(key, value);
    } else if (key == "Ixx") {
        p.Ixx = positive(key, value);
    } else if (key == "Iyy") {
        p.Iyy = positive(key, value);
    } else if (key == "Izz") {
        p.Izz = positive(key, value);
    } else if (key == "k") {
        p.k = positive(key, value);
    } else if (key == "l") {
        p.l = positive(key, value);
    } else if (key == "b") {
        p.b = nonnegative(key, value);
    } else if (key == "g") {
        p.g = positive(key, value);
    } else if (key == "drag") {
        const auto v = to_list(key, value);
        if (v.size() != 3) bad_value(key, value, "expected 3 values");
        for (double d : v) {
            if (!(d >= 0.0)) bad_value(key, value, "must be nonnegative");
        }
        p.a_drag = Eigen::Vector3d(v[0], v[1], v[2]);
    } else if (key == "out") {
        if (value.empty()) bad_value(key, value, "must not be empty");
        cfg.output_dir = std::filesystem::path(std::string(value));
    } else {
        throw ConfigError("unknown config key '" + std::string(key) + "'");
    }
}

void apply_config_text(ExperimentConfig& cfg, std::string_view text, std::string_view origin)
{
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        try {
            set_config_value(cfg, line.substr(0, eq), line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    apply_config_text(cfg, buf.str(), path.string());
}

} // namespace empc
