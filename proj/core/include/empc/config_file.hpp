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
#include <string>
#include <string_view>

#include "empc/harness.hpp"

namespace empc {

/// Sets one `key = value` entry on \p cfg. Vector-valued keys (rho, target,
/// drag) take comma-separated lists; rho.<state> / target.<state> set a single
/// component, e.g. `rho.x = 0.015`. waypoints are `x y z; x y z; ...`.
/// Throws ConfigError on unknown keys or malformed values.
void set_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Applies a flat `key = value` document; `#` starts a comment.
/// Errors carry \p origin and the line number.
void apply_config_text(ExperimentConfig& cfg, std::string_view text,
                       std::string_view origin = "<config>");

void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);

} // namespace empc
