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
#ifndef EPICTRL_SCENARIO_HPP
#define EPICTRL_SCENARIO_HPP

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "epictrl/model.hpp"
#include "epictrl/objectives.hpp"
#include "epictrl/solver.hpp"

namespace epictrl {

// One self-contained problem instance, loaded from a JSON document.
struct Scenario {
    ModelParams params;
    CompartmentState initial;
    double horizon = 0;         // T, days
    std::size_t steps = 1000;   // n, grid intervals
    ObjectiveWeights weights;
    std::array<double, 9> bounds{1, 1, 1, 1, 1, 1, 1, 1, 1}; // per-control maxima, in (0, 1]
    SweepOptions solver;

    TimeGrid grid() const { return {horizon, steps}; }
    friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct RunSummary {
    ObjectiveKind kind = ObjectiveKind::Cost;
    double value = 0;
    int iterations = 0;
    bool converged = false;
    double deaths = 0;   // D(T)
    double peak_h = 0;   // max H over the grid
    double peak_is = 0;  // max Is over the grid
    std::vector<std::string> warnings;
};

// Parses and fully validates a scenario document.  Throws ParseError with the
// offending field path on syntax errors, missing keys, out-of-range values,
// or a compartment sum that misses N by more than 1e-9 * N.
Scenario parse_scenario(const std::string& text);

// Serializes a scenario such that parse_scenario(emit_scenario(s)) == s.
std::string emit_scenario(const Scenario& scenario);

RunSummary summarize(const Solution& solution, ObjectiveKind kind);

std::string write_summary_json(const RunSummary& summary);

} // namespace epictrl

#endif
