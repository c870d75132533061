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
#ifndef EPICTRL_GRID_HPP
#define EPICTRL_GRID_HPP

#include <cstddef>
#include <vector>

#include "epictrl/model.hpp"

namespace epictrl {

// Uniform grid of n+1 nodes on [0, T].  Times are derived, not stored, so the
// step is uniform by construction.
struct TimeGrid {
    double T = 0;
    std::size_t n = 0;

    double dt() const { return T / static_cast<double>(n); }
    std::size_t nodes() const { return n + 1; }
    double time(std::size_t i) const {
        return i == n ? T : dt() * static_cast<double>(i);
    }
    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

// Control values on the grid nodes; values between nodes are linear
// interpolants of their neighbors.
struct ControlSchedule {
    TimeGrid grid;
    std::vector<ControlVector> nodes;

    static ControlSchedule constant(const TimeGrid& g, const ControlVector& u) {
        return {g, std::vector<ControlVector>(g.nodes(), u)};
    }
    static ControlSchedule zeros(const TimeGrid& g) { return constant(g, ControlVector{}); }
    friend bool operator==(const ControlSchedule&, const ControlSchedule&) = default;
};

// State values on the grid nodes.
struct Trajectory {
    TimeGrid grid;
    std::vector<CompartmentState> nodes;

    friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

} // namespace epictrl

#endif
