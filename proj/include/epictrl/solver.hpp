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
#ifndef EPICTRL_SOLVER_HPP
#define EPICTRL_SOLVER_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "epictrl/adjoint.hpp"
#include "epictrl/grid.hpp"
#include "epictrl/objectives.hpp"
#include "epictrl/parallel.hpp"

namespace epictrl {

struct Scenario;

// Costate values on the grid nodes.
struct AdjointTrajectory {
    TimeGrid grid;
    std::vector<AdjointState> nodes;

    friend bool operator==(const AdjointTrajectory&, const AdjointTrajectory&) = default;
};

struct SweepOptions {
    int max_iters = 500;
    double tol = 1e-4;          // max-norm of the applied control change
    double theta = 0.5;         // relaxation of the control update, in (0, 1]
    double singular_band = 1e-9; // switching values within +-band hold the previous iterate
    bool discount_in_update = true; // feasibility: carry exp(sigma t) into omega

    friend bool operator==(const SweepOptions&, const SweepOptions&) = default;
};

// Forward integration result.  Negative state excursions are recorded, never
// projected away, so the adjoint consistency of the trajectory is preserved.
struct ForwardRun {
    Trajectory trajectory;
    std::size_t negative_state_nodes = 0;  // nodes with any component < 0
    std::size_t first_negative_node = 0;   // meaningful when negative_state_nodes > 0
    std::size_t negative_factor_nodes = 0; // nodes where a (1 - sum u) factor < 0
};

struct Solution {
    Trajectory states;
    AdjointTrajectory adjoints;
    ControlSchedule controls;
    double objective = 0;
    int iterations = 0;
    bool converged = false;
    std::vector<std::string> warnings;
};

// Classical fixed-step RK4 on the controlled dynamics; controls at half steps
// are linear interpolants of the adjacent nodes.  Throws DivergenceError on a
// non-finite state.
ForwardRun integrate_forward(const Scenario& scenario, const ControlSchedule& controls);

// Same scheme on the uncontrolled dynamics (not the controlled system at
// u = 0, whose hospital discharge splits differ by round-off).
ForwardRun integrate_forward_uncontrolled(const Scenario& scenario);

// RK4 on the adjoint system from alpha(T) = 0 down to t = 0; states and
// controls at interior evaluation points are linear interpolants.
AdjointTrajectory integrate_backward(const Scenario& scenario, const Trajectory& states,
                                     const ControlSchedule& controls, ObjectiveKind kind);

// Pointwise characterizations of the optimal control, one rule per objective.
// Cost: clamp the stationary omega values into [0, bound].
ControlSchedule update_controls_cost(const Trajectory& states,
                                     const AdjointTrajectory& adjoints,
                                     const Scenario& scenario,
                                     ExecPolicy policy = ExecPolicy::Parallel);

// Effectiveness: bang-bang on the sign of the switching vector dH/du, holding
// the previous iterate inside the singular band.
ControlSchedule update_controls_effectiveness(const Trajectory& states,
                                              const AdjointTrajectory& adjoints,
                                              const Scenario& scenario,
                                              const ControlSchedule& previous,
                                              ExecPolicy policy = ExecPolicy::Parallel);

// Feasibility: the stated rule max(omega, bound) always lands on or above the
// bound; values beyond it are clamped back into the box and counted.
struct FeasibilityUpdate {
    ControlSchedule schedule;
    std::size_t out_of_box = 0; // node/control pairs where the rule left the box
};

FeasibilityUpdate update_controls_feasibility(const Trajectory& states,
                                              const AdjointTrajectory& adjoints,
                                              const Scenario& scenario,
                                              ExecPolicy policy = ExecPolicy::Parallel);

// Relaxed forward-backward sweep: forward state RK4, backward adjoint RK4,
// kind-specific update, blend u <- theta * u_new + (1 - theta) * u_old, until
// the applied change drops to tol or max_iters is hit.  After convergence one
// unrelaxed update is applied and the trajectories are recomputed, so the
// returned triple satisfies the pointwise characterization exactly.
Solution forward_backward_sweep(const Scenario& scenario, ObjectiveKind kind,
                                const SweepOptions& options);

// Same, with the options stored in the scenario.
Solution forward_backward_sweep(const Scenario& scenario, ObjectiveKind kind);

} // namespace epictrl

#endif
