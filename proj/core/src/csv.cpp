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

#include "empc/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "empc/errors.hpp"

namespace empc {

namespace {

void put(std::string& line, double v)
{
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    line.append(buf.data(), res.ptr);
}

double parse_double(std::string_view field, const std::filesystem::path& path, std::size_t line_no)
{
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
        throw Error(path.string() + ":" + std::to_string(line_no) + ": bad number '" +
                    std::string(field) + "'");
    }
    return v;
}

} // namespace

void write_csv(const RunRecord& record, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");

    out << kCsvHeader << '\n';
    std::string line;
    for (const RunRow& row : record.rows) {
        line.clear();
        put(line, row.t);
        for (int i = 0; i < 12; ++i) { line += ','; put(line, row.state(i)); }
        for (int i = 0; i < 4; ++i) { line += ','; put(line, row.applied(i)); }
        for (int i = 0; i < 4; ++i) { line += ','; put(line, row.std(i)); }
        line += ','; put(line, row.total_std);
        line += ','; put(line, row.mae);
        line += ',';
        line += std::to_string(row.waypoint);
        out << line << '\n';
    }
    out.flush();
    if (!out) throw Error("write failed for " + path.string());
}

RunRecord read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw Error(path.string() + ": missing or unexpected header");
    }
    RunRecord record;
    std::size_t line_no = 1;
    std::vector<std::string_view> fields;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        fields.clear();
        std::string_view rest(line);
        for (;;) {
            const auto comma = rest.find(',');
            fields.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (fields.size() != 24) {
            throw Error(path.string() + ":" + std::to_string(line_no) + ": expected 24 fields, got " +
                        std::to_string(fields.size()));
        }
        RunRow row;
        row.t = parse_double(fields[0], path, line_no);
        for (int i = 0; i < 12; ++i) row.state(i) = parse_double(fields[1 + i], path, line_no);
        for (int i = 0; i < 4; ++i) row.applied(i) = parse_double(fields[13 + i], path, line_no);
        for (int i = 0; i < 4; ++i) row.std(i) = parse_double(fields[17 + i], path, line_no);
        row.total_std = parse_double(fields[21], path, line_no);
        row.mae = parse_double(fields[22], path, line_no);
        row.waypoint = static_cast<int>(parse_double(fields[23], path, line_no));
        record.rows.push_back(row);
    }
    return record;
}

} // namespace empc
