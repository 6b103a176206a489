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

#include "empc/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "empc/errors.hpp"

namespace empc {

namespace {

struct Series {
    std::vector<double> x, y;
    std::string color = "#1f4e9c";
    bool dashed = false;
    bool dots = false;
};

struct Panel {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    std::vector<Series> series;
    bool equal_aspect = false;
};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) { lo = std::min(lo, v); hi = std::max(hi, v); }
    void pad()
    {
        if (!std::isfinite(lo)) { lo = 0.0; hi = 1.0; }
        const double span = hi - lo;
        const double margin = span > 1e-12 ? 0.05 * span : std::max(0.5, std::abs(lo) * 0.1);
        lo -= margin;
        hi += margin;
    }
};

double nice_step(double span)
{
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double f : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (raw <= f * mag) return f * mag;
    }
    return 10.0 * mag;
}

void render_panel(std::ostringstream& svg, const Panel& p, double ox, double oy, double w, double h)
{
    const double left = 70, right = 15, top = 28, bottom = 45;
    const double pw = w - left - right, ph = h - top - bottom;

    Range xr, yr;
    for (const auto& s : p.series) {
        for (double v : s.x) xr.add(v);
        for (double v : s.y) yr.add(v);
    }
    xr.pad();
    yr.pad();
    if (p.equal_aspect) {
        const double sx = (xr.hi - xr.lo) / pw, sy = (yr.hi - yr.lo) / ph;
        const double s = std::max(sx, sy);
        const double cx = 0.5 * (xr.lo + xr.hi), cy = 0.5 * (yr.lo + yr.hi);
        xr.lo = cx - 0.5 * s * pw; xr.hi = cx + 0.5 * s * pw;
        yr.lo = cy - 0.5 * s * ph; yr.hi = cy + 0.5 * s * ph;
    }
    const auto px = [&](double v) { return ox + left + (v - xr.lo) / (xr.hi - xr.lo) * pw; };
    const auto py = [&](double v) { return oy + top + ph - (v - yr.lo) / (yr.hi - yr.lo) * ph; };

    svg << "<rect x=\"" << num(ox + left) << "\" y=\"" << num(oy + top) << "\" width=\"" << num(pw)
        << "\" height=\"" << num(ph) << "\" fill=\"white\" stroke=\"#444\"/>\n";
    svg << "<text x=\"" << num(ox + left + pw / 2) << "\" y=\"" << num(oy + 18)
        << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(p.title) << "</text>\n";
    svg << "<text x=\"" << num(ox + left + pw / 2) << "\" y=\"" << num(oy + h - 8)
        << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(p.xlabel) << "</text>\n";
    svg << "<text transform=\"translate(" << num(ox + 14) << "," << num(oy + top + ph / 2)
        << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"12\">" << escape(p.ylabel) << "</text>\n";

    for (int axis = 0; axis < 2; ++axis) {
        const Range& r = axis == 0 ? xr : yr;
        const double step = nice_step(r.hi - r.lo);
        for (double t = std::ceil(r.lo / step) * step; t <= r.hi + 1e-12; t += step) {
            const double v = std::abs(t) < 1e-12 * step ? 0.0 : t;
            if (axis == 0) {
                svg << "<line x1=\"" << num(px(v)) << "\" y1=\"" << num(oy + top + ph) << "\" x2=\""
                    << num(px(v)) << "\" y2=\"" << num(oy + top + ph + 4) << "\" stroke=\"#444\"/>"
                    << "<text x=\"" << num(px(v)) << "\" y=\"" << num(oy + top + ph + 16)
                    << "\" text-anchor=\"middle\" font-size=\"10\">" << num(v) << "</text>\n";
            } else {
                svg << "<line x1=\"" << num(ox + left - 4) << "\" y1=\"" << num(py(v)) << "\" x2=\""
                    << num(ox + left) << "\" y2=\"" << num(py(v)) << "\" stroke=\"#444\"/>"
                    << "<text x=\"" << num(ox + left - 6) << "\" y=\"" << num(py(v) + 3)
                    << "\" text-anchor=\"end\" font-size=\"10\">" << num(v) << "</text>\n";
            }
        }
    }

    for (const auto& s : p.series) {
        if (s.dots) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                svg << "<circle cx=\"" << num(px(s.x[i])) << "\" cy=\"" << num(py(s.y[i]))
                    << "\" r=\"1.6\" fill=\"" << s.color << "\"/>\n";
            }
            continue;
        }
        svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
        if (s.dashed) svg << " stroke-dasharray=\"6,4\"";
        svg << " points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            svg << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
        }
        svg << "\"/>\n";
    }
}

void write_figure(const std::filesystem::path& path, const std::vector<Panel>& panels, int cols,
                  double panel_w = 420, double panel_h = 280)
{
    const int rows = (static_cast<int>(panels.size()) + cols - 1) / cols;
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(cols * panel_w)
        << "\" height=\"" << num(rows * panel_h) << "\" font-family=\"sans-serif\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"#fafafa\"/>\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        const auto r = static_cast<double>(i / static_cast<std::size_t>(cols));
        const auto c = static_cast<double>(i % static_cast<std::size_t>(cols));
        render_panel(svg, panels[i], c * panel_w, r * panel_h, panel_w, panel_h);
    }
    svg << "</svg>\n";

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << svg.str();
    if (!out) throw Error("write failed for " + path.string());
}

QuadState row_target(const RunRow& row, const ExperimentConfig& cfg)
{
    if (cfg.mode == ExperimentMode::Terminal) return cfg.target;
    return waypoint_target(cfg.waypoints.at(static_cast<std::size_t>(row.waypoint)));
}

constexpr const char* kBlue = "#1f4e9c";
constexpr const char* kRed = "#c0392b";
constexpr const char* kGreen = "#1e8449";
constexpr const char* kBlack = "#111111";

} // namespace

std::vector<std::filesystem::path> emit_plots(const RunRecord& record, const ExperimentConfig& cfg,
                                              const std::filesystem::path& dir)
{
    if (record.rows.empty()) throw InvalidArgument("emit_plots: record has no rows");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("cannot create " + dir.string() + ": " + ec.message());

    std::vector<double> t;
    for (const auto& row : record.rows) t.push_back(row.t);

    std::vector<std::filesystem::path> written;

    {
        static constexpr const char* names[] = {"x", "y", "z", "phi", "theta", "psi"};
        static constexpr const char* units[] = {"m", "m", "m", "rad", "rad", "rad"};
        std::vector<Panel> panels;
        for (int i = 0; i < 6; ++i) {
            Series flown, ref;
            flown.x = ref.x = t;
            ref.color = kRed;
            ref.dashed = true;
            for (const auto& row : record.rows) {
                flown.y.push_back(row.state(i));
                ref.y.push_back(row_target(row, cfg)(i));
            }
            panels.push_back({names[i], "t (s)", std::string(names[i]) + " (" + units[i] + ")",
                              {flown, ref}});
        }
        written.push_back(dir / (cfg.name + "_states.svg"));
        write_figure(written.back(), panels, 3);
    }

    {
        std::vector<Panel> panels;
        for (int i = 0; i < 4; ++i) {
            Series u, trim;
            u.x = trim.x = t;
            trim.color = kRed;
            trim.dashed = true;
            for (const auto& row : record.rows) {
                u.y.push_back(row.applied(i));
                trim.y.push_back(cfg.trim);
            }
            panels.push_back({"rotor " + std::to_string(i + 1), "t (s)", "w^2 (rad^2/s^2)", {u, trim}});
        }
        written.push_back(dir / (cfg.name + "_controls.svg"));
        write_figure(written.back(), panels, 2);
    }

    {
        Series s;
        s.x = t;
        for (const auto& row : record.rows) s.y.push_back(row.total_std);
        written.push_back(dir / (cfg.name + "_std.svg"));
        write_figure(written.back(), {{"total control std", "t (s)", "sqrt(sum var) (rad^2/s^2)", {s}}}, 1,
                     640, 360);
    }

    if (cfg.mode == ExperimentMode::Waypoints) {
        // Closed track through the waypoints, preceded by the leg from the start.
        std::vector<Eigen::Vector3d> track{cfg.initial_state.segment<3>(state::x)};
        for (const auto& w : cfg.waypoints) track.push_back(w);
        track.push_back(cfg.waypoints.front());

        const auto project = [](const Eigen::Vector3d& p, int view) -> Eigen::Vector2d {
            switch (view) {
            case 0: return {p.x() - 0.45 * p.y(), p.z() + 0.3 * p.y()};   // oblique 3-D
            case 1: return {p.x(), p.y()};
            case 2: return {p.x(), p.z()};
            default: return {p.y(), p.z()};
            }
        };
        static constexpr const char* suffix[] = {"_track_3d.svg", "_track_xy.svg", "_track_xz.svg",
                                                 "_track_yz.svg"};
        static constexpr const char* axes[][2] = {{"oblique x", "oblique z"}, {"x (m)", "y (m)"},
                                                  {"x (m)", "z (m)"}, {"y (m)", "z (m)"}};
        for (int view = 0; view < 4; ++view) {
            Series ideal, flown, marks, start;
            ideal.color = kRed;
            flown.color = kBlack;
            flown.dots = true;
            marks.color = kBlue;
            marks.dots = true;
            start.color = kGreen;
            start.dots = true;
            for (const auto& p : track) {
                const auto q = project(p, view);
                ideal.x.push_back(q.x());
                ideal.y.push_back(q.y());
            }
            for (const auto& w : cfg.waypoints) {
                const auto q = project(w, view);
                marks.x.push_back(q.x());
                marks.y.push_back(q.y());
            }
            const auto s0 = project(track.front(), view);
            start.x.push_back(s0.x());
            start.y.push_back(s0.y());
            for (const auto& row : record.rows) {
                const auto q = project(row.state.segment<3>(state::x), view);
                flown.x.push_back(q.x());
                flown.y.push_back(q.y());
            }
            written.push_back(dir / (cfg.name + suffix[view]));
            write_figure(written.back(),
                         {{"track", axes[view][0], axes[view][1], {ideal, flown, marks, start}, true}}, 1,
                         520, 480);
        }
    }
    return written;
}

} // namespace empc
