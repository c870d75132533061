/* Copyright (C) 2026 epictrl contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "epictrl/csv.hpp"

#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "epictrl/errors.hpp"

namespace epictrl {

namespace {

constexpr std::string_view kHeader =
    "t,S,E,Ia,Is,H,R,D,u1,u2,u3,u4,u5,u6,u7,u8,u9,"
    "alpha1,alpha2,alpha3,alpha4,alpha5,alpha6,alpha7";
constexpr std::size_t kColumns = 24;

double parse_field(std::string_view cell, std::size_t row, std::size_t col) {
    double value = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw ParseError("row " + std::to_string(row) + ", column " + std::to_string(col),
                         "malformed number '" + std::string(cell) + "'");
    return value;
}

} // namespace

std::string format_double(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string write_trajectory_csv(const Solution& solution) {
    const std::size_t nodes = solution.states.nodes.size();
    if (solution.controls.nodes.size() != nodes || solution.adjoints.nodes.size() != nodes)
        throw ShapeError("write_trajectory_csv: states, controls, and adjoints must share "
                         "the grid");
    const TimeGrid& grid = solution.states.grid;
    std::string out;
    out.reserve(64 * (nodes + 1));
    out.append(kHeader);
    out.push_back('\n');
    for (std::size_t i = 0; i < nodes; ++i) {
        const auto x = solution.states.nodes[i].as_array();
        const auto& u = solution.controls.nodes[i];
        const auto a = solution.adjoints.nodes[i].as_array();
        out.append(format_double(grid.time(i)));
        for (double v : x) {
            out.push_back(',');
            out.append(format_double(v));
        }
        for (double v : u) {
            out.push_back(',');
            out.append(format_double(v));
        }
        for (double v : a) {
            out.push_back(',');
            out.append(format_double(v));
        }
        out.push_back('\n');
    }
    return out;
}

Solution read_trajectory_csv(const std::string& text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        if (end > start) lines.push_back(std::string_view(text).substr(start, end - start));
        start = end + 1;
    }
    if (lines.empty() || lines.front() != kHeader)
        throw ParseError("row 0", "missing or unexpected header");
    const std::size_t nodes = lines.size() - 1;
    if (nodes < 2) throw ParseError("$", "need at least 2 data rows");

    Solution solution;
    solution.states.nodes.reserve(nodes);
    solution.controls.nodes.reserve(nodes);
    solution.adjoints.nodes.reserve(nodes);
    double last_t = 0;
    for (std::size_t r = 0; r < nodes; ++r) {
        const std::string_view line = lines[r + 1];
        std::array<double, kColumns> fields{};
        std::size_t col = 0;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            if (comma == std::string_view::npos) comma = line.size();
            if (col >= kColumns)
                throw ParseError("row " + std::to_string(r + 1), "too many columns");
            fields[col] = parse_field(line.substr(pos, comma - pos), r + 1, col);
            ++col;
            pos = comma + 1;
        }
        if (col != kColumns)
            throw ParseError("row " + std::to_string(r + 1),
                             "expected " + std::to_string(kColumns) + " columns, found " +
                                 std::to_string(col));
        last_t = fields[0];
        std::array<double, 7> xs;
        for (std::size_t i = 0; i < 7; ++i) xs[i] = fields[1 + i];
        solution.states.nodes.push_back(CompartmentState::from_array(xs));
        ControlVector u;
        for (std::size_t i = 0; i < 9; ++i) u[i] = fields[8 + i];
        solution.controls.nodes.push_back(u);
        std::array<double, 7> as;
        for (std::size_t i = 0; i < 7; ++i) as[i] = fields[17 + i];
        solution.adjoints.nodes.push_back(AdjointState::from_array(as));
    }
    const TimeGrid grid{last_t, nodes - 1};
    solution.states.grid = grid;
    solution.controls.grid = grid;
    solution.adjoints.grid = grid;
    return solution;
}

} // namespace epictrl
