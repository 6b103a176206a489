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

#pragma once

#include <filesystem>
#include <vector>

#include "empc/harness.hpp"

namespace empc {

/// Writes static SVG figures for a run into \p dir (created if missing):
///   <name>_states.svg, <name>_controls.svg, <name>_std.svg
/// and for waypoint runs additionally
///   <name>_track_3d.svg, <name>_track_xy.svg, <name>_track_xz.svg, <name>_track_yz.svg
/// Returns the paths in that order. Throws InvalidArgument on an empty record
/// and Error on I/O failure.
std::vector<std::filesystem::path> emit_plots(const RunRecord& record, const ExperimentConfig& cfg,
                                              const std::filesystem::path& dir);

} // namespace empc
