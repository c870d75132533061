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
#include "epictrl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epictrl/errors.hpp"
#include "epictrl/scenario.hpp"

namespace epictrl {

namespace {

using Vec7 = std::array<double, 7>;

Vec7 axpy(const Vec7& x, double a, const Vec7& y) {
    Vec7 out;
    for (std::size_t i = 0; i < 7; ++i) out[i] = x[i] + a * y[i];
    return out;
}

Vec7 rk4_combine(const Vec7& x, double dt, const Vec7& k1, const Vec7& k2, const Vec7& k3,
                 const Vec7& k4) {
    Vec7 out;
    for (std::size_t i = 0; i < 7; ++i)
        out[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

bool finite(const Vec7& v) {
    for (double c : v)
        if (!std::isfinite(c)) return false;
    return true;
}

ControlVector midpoint(const ControlVector& a, const ControlVector& b) {
    ControlVector m;
    for (std::size_t i = 0; i < 9; ++i) m[i] = 0.5 * (a[i] + b[i]);
    return m;
}

CompartmentState midpoint(const CompartmentState& a, const CompartmentState& b) {
    const Vec7 av = a.as_array();
    const Vec7 bv = b.as_array();
    Vec7 m;
    for (std::size_t i = 0; i < 7; ++i) m[i] = 0.5 * (av[i] + bv[i]);
    return CompartmentState::from_array(m);
}

void require_aligned(const TimeGrid& a, const TimeGrid& b, std::size_t nodes_a,
                     std::size_t nodes_b, const char* who) {
    if (!(a == b) || nodes_a != a.nodes() || nodes_b != b.nodes())
        throw ShapeError(std::string(who) + ": containers do not share the grid");
}

// True when any (1 - sum of controls) gate at this node is negative.
bool negative_gate(const ControlVector& u) {
    return 1.0 - u[0] - u[2] - u[3] - u[4] < 0.0 || 1.0 - u[2] - u[3] - u[4] < 0.0 ||
           1.0 - u[5] < 0.0 || 1.0 - u[6] - u[7] < 0.0 || 1.0 - u[8] < 0.0;
}

} // namespace

ForwardRun integrate_forward(const Scenario& scenario, const ControlSchedule& controls) {
    const TimeGrid grid = scenario.grid();
    require_aligned(grid, controls.grid, grid.nodes(), controls.nodes.size(),
                    "integrate_forward");
    const ModelParams& p = scenario.params;
    const double dt = grid.dt();

    ForwardRun run;
    run.trajectory.grid = grid;
    run.trajectory.nodes.reserve(grid.nodes());
    run.trajectory.nodes.push_back(scenario.initial);

    Vec7 x = scenario.initial.as_array();
    for (std::size_t i = 0; i < grid.n; ++i) {
        const ControlVector& u0 = controls.nodes[i];
        const ControlVector& u1 = controls.nodes[i + 1];
        const ControlVector um = midpoint(u0, u1);
        Vec7 next;
        try {
            const Vec7 k1 = rhs_controlled(CompartmentState::from_array(x), u0, p).as_array();
            const Vec7 k2 =
                rhs_controlled(CompartmentState::from_array(axpy(x, 0.5 * dt, k1)), um, p)
                    .as_array();
            const Vec7 k3 =
                rhs_controlled(CompartmentState::from_array(axpy(x, 0.5 * dt, k2)), um, p)
                    .as_array();
            const Vec7 k4 =
                rhs_controlled(CompartmentState::from_array(axpy(x, dt, k3)), u1, p)
                    .as_array();
            next = rk4_combine(x, dt, k1, k2, k3, k4);
        } catch (const InvalidInput&) {
            throw DivergenceError(i, "integrate_forward: non-finite state inside step " +
                                         std::to_string(i));
        }
        if (!finite(next))
            throw DivergenceError(i + 1, "integrate_forward: non-finite state at node " +
                                             std::to_string(i + 1));
        x = next;
        const CompartmentState state = CompartmentState::from_array(x);
        if (x[0] < 0 || x[1] < 0 || x[2] < 0 || x[3] < 0 || x[4] < 0 || x[5] < 0 || x[6] < 0) {
            if (run.negative_state_nodes == 0) run.first_negative_node = i + 1;
            ++run.negative_state_nodes;
        }
        run.trajectory.nodes.push_back(state);
    }
    for (const ControlVector& u : controls.nodes)
        if (negative_gate(u)) ++run.negative_factor_nodes;
    return run;
}

ForwardRun integrate_forward_uncontrolled(const Scenario& scenario) {
    const TimeGrid grid = scenario.grid();
    const ModelParams& p = scenario.params;
    const double dt = grid.dt();

    ForwardRun run;
    run.trajectory.grid = grid;
    run.trajectory.nodes.reserve(grid.nodes());
    run.trajectory.nodes.push_back(scenario.initial);

    Vec7 x = scenario.initial.as_array();
    for (std::size_t i = 0; i < grid.n; ++i) {
        Vec7 next;
        try {
            const Vec7 k1 = rhs_uncontrolled(CompartmentState::from_array(x), p).as_array();
            const Vec7 k2 =
                rhs_uncontrolled(CompartmentState::from_array(axpy(x, 0.5 * dt, k1)), p)
                    .as_array();
            const Vec7 k3 =
                rhs_uncontrolled(CompartmentState::from_array(axpy(x, 0.5 * dt, k2)), p)
                    .as_array();
            const Vec7 k4 =
                rhs_uncontrolled(CompartmentState::from_array(axpy(x, dt, k3)), p).as_array();
            next = rk4_combine(x, dt, k1, k2, k3, k4);
        } catch (const InvalidInput&) {
            throw DivergenceError(i, "integrate_forward_uncontrolled: non-finite state "
                                     "inside step " +
                                         std::to_string(i));
        }
        if (!finite(next))
            throw DivergenceError(i + 1,
                                  "integrate_forward_uncontrolled: non-finite state at "
                                  "node " +
                                      std::to_string(i + 1));
        x = next;
        if (x[0] < 0 || x[1] < 0 || x[2] < 0 || x[3] < 0 || x[4] < 0 || x[5] < 0 || x[6] < 0) {
            if (run.negative_state_nodes == 0) run.first_negative_node = i + 1;
            ++run.negative_state_nodes;
        }
        run.trajectory.nodes.push_back(CompartmentState::from_array(x));
    }
    return run;
}

AdjointTrajectory integrate_backward(const Scenario& scenario, const Trajectory& states,
                                     const ControlSchedule& controls, ObjectiveKind kind) {
    const TimeGrid grid = scenario.grid();
    require_aligned(grid, states.grid, grid.nodes(), states.nodes.size(),
                    "integrate_backward");
    require_aligned(grid, controls.grid, grid.nodes(), controls.nodes.size(),
                    "integrate_backward");
    const ModelParams& p = scenario.params;
    const ObjectiveWeights& w = scenario.weights;
    const double dt = grid.dt();

    AdjointTrajectory adj;
    adj.grid = grid;
    adj.nodes.assign(grid.nodes(), AdjointState{}); // transversality: alpha(T) = 0

    Vec7 a = adj.nodes.back().as_array();
    for (std::size_t i = grid.n; i > 0; --i) {
        const double t_hi = grid.time(i);
        const double t_lo = grid.time(i - 1);
        const double t_mid = t_hi - 0.5 * dt;
        const CompartmentState& x_hi = states.nodes[i];
        const CompartmentState& x_lo = states.nodes[i - 1];
        const CompartmentState x_mid = midpoint(x_lo, x_hi);
        const ControlVector& u_hi = controls.nodes[i];
        const ControlVector& u_lo = controls.nodes[i - 1];
        const ControlVector u_mid = midpoint(u_lo, u_hi);
        auto rhs = [&](const Vec7& av, const CompartmentState& xs, const ControlVector& us,
                       double t) {
            return adjoint_rhs(xs, us, AdjointState::from_array(av), p, w, t, kind)
                .as_array();
        };
        Vec7 prev;
        try {
            const Vec7 k1 = rhs(a, x_hi, u_hi, t_hi);
            const Vec7 k2 = rhs(axpy(a, -0.5 * dt, k1), x_mid, u_mid, t_mid);
            const Vec7 k3 = rhs(axpy(a, -0.5 * dt, k2), x_mid, u_mid, t_mid);
            const Vec7 k4 = rhs(axpy(a, -dt, k3), x_lo, u_lo, t_lo);
            prev = rk4_combine(a, -dt, k1, k2, k3, k4);
        } catch (const InvalidInput&) {
            throw DivergenceError(i - 1,
                                  "integrate_backward: non-finite costate inside step " +
                                      std::to_string(i - 1));
        }
        if (!finite(prev))
            throw DivergenceError(i - 1, "integrate_backward: non-finite costate at node " +
                                             std::to_string(i - 1));
        a = prev;
        adj.nodes[i - 1] = AdjointState::from_array(a);
    }
    return adj;
}

ControlSchedule update_controls_cost(const Trajectory& states,
                                     const AdjointTrajectory& adjoints,
                                     const Scenario& scenario, ExecPolicy policy) {
    const TimeGrid grid = scenario.grid();
    require_aligned(grid, states.grid, grid.nodes(), states.nodes.size(),
                    "update_controls_cost");
    require_aligned(grid, adjoints.grid, grid.nodes(), adjoints.nodes.size(),
                    "update_controls_cost");
    ControlSchedule out = ControlSchedule::zeros(grid);
    for_each_index(grid.nodes(), policy, [&](std::size_t i) {
        const std::array<double, 9> omega =
            omega_star(states.nodes[i], adjoints.nodes[i], scenario.params,
                       scenario.weights);
        for (std::size_t j = 0; j < 9; ++j)
            out.nodes[i][j] = std::min(std::max(0.0, omega[j]), scenario.bounds[j]);
    });
    return out;
}

ControlSchedule update_controls_effectiveness(const Trajectory& states,
                                              const AdjointTrajectory& adjoints,
                                              const Scenario& scenario,
                                              const ControlSchedule& previous,
                                              ExecPolicy policy) {
    const TimeGrid grid = scenario.grid();
    require_aligned(grid, states.grid, grid.nodes(), states.nodes.size(),
                    "update_controls_effectiveness");
    require_aligned(grid, adjoints.grid, grid.nodes(), adjoints.nodes.size(),
                    "update_controls_effectiveness");
    require_aligned(grid, previous.grid, grid.nodes(), previous.nodes.size(),
                    "update_controls_effectiveness");
    const double band = scenario.solver.singular_band;
    ControlSchedule out = ControlSchedule::zeros(grid);
    for_each_index(grid.nodes(), policy, [&](std::size_t i) {
        // The Hamiltonian is affine in u, so dH/du is u-independent here and
        // acts as the switching vector: maximize by going to the top of the
        // box on a positive coefficient and to zero on a negative one.
        const std::array<double, 9> sw =
            hamiltonian_grad_u(states.nodes[i], previous.nodes[i], adjoints.nodes[i],
                               scenario.params, scenario.weights, grid.time(i),
                               ObjectiveKind::Effectiveness);
        for (std::size_t j = 0; j < 9; ++j) {
            if (sw[j] > band)
                out.nodes[i][j] = scenario.bounds[j];
            else if (sw[j] < -band)
                out.nodes[i][j] = 0.0;
            else
                out.nodes[i][j] = previous.nodes[i][j]; // singular: hold
        }
    });
    return out;
}

FeasibilityUpdate update_controls_feasibility(const Trajectory& states,
                                              const AdjointTrajectory& adjoints,
                                              const Scenario& scenario, ExecPolicy policy) {
    const TimeGrid grid = scenario.grid();
    require_aligned(grid, states.grid, grid.nodes(), states.nodes.size(),
                    "update_controls_feasibility");
    require_aligned(grid, adjoints.grid, grid.nodes(), adjoints.nodes.size(),
                    "update_controls_feasibility");
    FeasibilityUpdate result;
    result.schedule = ControlSchedule::zeros(grid);
    std::vector<unsigned> escaped(grid.nodes(), 0);
    for_each_index(grid.nodes(), policy, [&](std::size_t i) {
        std::array<double, 9> omega = omega_star(states.nodes[i], adjoints.nodes[i],
                                                 scenario.params, scenario.weights);
        if (scenario.solver.discount_in_update) {
            // The stationarity derivation carries exp(sigma t); the stated
            // rule drops it.  Default keeps the derivation's factor.
            const double growth = std::exp(scenario.weights.sigma * grid.time(i));
            for (double& o : omega) o *= growth;
        }
        for (std::size_t j = 0; j < 9; ++j) {
            const double bound = scenario.bounds[j];
            const double rule = omega[j] < bound ? bound : omega[j];
            const double admissible = std::min(std::max(0.0, rule), bound);
            if (rule != admissible) ++escaped[i];
            result.schedule.nodes[i][j] = admissible;
        }
    });
    for (unsigned e : escaped) result.out_of_box += e;
    return result;
}

Solution forward_backward_sweep(const Scenario& scenario, ObjectiveKind kind) {
    return forward_backward_sweep(scenario, kind, scenario.solver);
}

Solution forward_backward_sweep(const Scenario& scenario, ObjectiveKind kind,
                                const SweepOptions& options) {
    if (!(options.theta > 0.0) || options.theta > 1.0)
        throw InvalidInput("forward_backward_sweep: relaxation must be in (0, 1]");
    if (!(options.tol > 0.0))
        throw InvalidInput("forward_backward_sweep: tolerance must be positive");
    if (options.max_iters < 1)
        throw InvalidInput("forward_backward_sweep: max_iters must be at least 1");

    Solution solution;
    const ExistenceReport existence = check_existence(scenario, kind, 1000, default_seed());
    solution.warnings = existence.warnings;
    if (!existence.all_passed())
        solution.warnings.push_back("existence conditions not all satisfied");

    const TimeGrid grid = scenario.grid();
    ControlSchedule u = ControlSchedule::zeros(grid);
    std::size_t feasibility_escapes = 0;

    auto update = [&](const Trajectory& x, const AdjointTrajectory& a,
                      const ControlSchedule& prev) {
        switch (kind) {
        case ObjectiveKind::Cost: return update_controls_cost(x, a, scenario);
        case ObjectiveKind::Effectiveness:
            return update_controls_effectiveness(x, a, scenario, prev);
        default: {
            FeasibilityUpdate fu = update_controls_feasibility(x, a, scenario);
            feasibility_escapes = fu.out_of_box;
            return std::move(fu.schedule);
        }
        }
    };

    for (int iter = 1; iter <= options.max_iters; ++iter) {
        const ForwardRun fwd = integrate_forward(scenario, u);
        const AdjointTrajectory adj = integrate_backward(scenario, fwd.trajectory, u, kind);
        const ControlSchedule cand = update(fwd.trajectory, adj, u);
        double delta = 0;
        for (std::size_t i = 0; i < grid.nodes(); ++i)
            for (std::size_t j = 0; j < 9; ++j) {
                const double blended =
                    options.theta * cand.nodes[i][j] + (1.0 - options.theta) * u.nodes[i][j];
                delta = std::max(delta, std::abs(blended - u.nodes[i][j]));
                u.nodes[i][j] = blended;
            }
        solution.iterations = iter;
        if (delta <= options.tol) {
            solution.converged = true;
            break;
        }
    }

    if (solution.converged) {
        // One unrelaxed update so the returned controls satisfy the pointwise
        // characterization of their own trajectories up to the residual of the
        // final integration, instead of sitting a blend away from it.
        const ForwardRun fwd = integrate_forward(scenario, u);
        const AdjointTrajectory adj = integrate_backward(scenario, fwd.trajectory, u, kind);
        u = update(fwd.trajectory, adj, u);
    } else {
        solution.warnings.push_back("sweep did not converge within " +
                                    std::to_string(options.max_iters) + " iterations");
    }

    const ForwardRun final_fwd = integrate_forward(scenario, u);
    solution.states = final_fwd.trajectory;
    solution.adjoints = integrate_backward(scenario, solution.states, u, kind);
    solution.controls = std::move(u);
    solution.objective =
        evaluate_objective(solution.states, solution.controls, scenario.weights, kind);
    if (final_fwd.negative_state_nodes > 0)
        solution.warnings.push_back(
            "state dipped negative at " + std::to_string(final_fwd.negative_state_nodes) +
            " nodes (first at node " + std::to_string(final_fwd.first_negative_node) + ")");
    if (final_fwd.negative_factor_nodes > 0)
        solution.warnings.push_back("control sums exceeded 1 at " +
                                    std::to_string(final_fwd.negative_factor_nodes) +
                                    " nodes, turning an outflow factor negative");
    if (kind == ObjectiveKind::Feasibility && feasibility_escapes > 0)
        solution.warnings.push_back(
            "feasibility rule selected values outside the admissible box at " +
            std::to_string(feasibility_escapes) + " node-control pairs; clamped");
    return solution;
}

} // namespace epictrl
