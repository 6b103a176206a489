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
#include <string_view>

#include "empc/harness.hpp"

namespace empc {

inline constexpr std::string_view kCsvHeader =
    "t,x,y,z,phi,theta,psi,vx,vy,vz,dphi,dtheta,dpsi,u1,u2,u3,u4,"
    "std1,std2,std3,std4,total_std,mae,wp";

/// One row per control cycle; numbers in shortest round-trip decimal form.
/// Throws Error naming the path on I/O failure.
void write_csv(const RunRecord& record, const std::filesystem::path& path);

/// Parses a file produced by write_csv (rows only).
RunRecord read_csv(const std::filesystem::path& path);

} // namespace empc
