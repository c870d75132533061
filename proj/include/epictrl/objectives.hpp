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
#ifndef EPICTRL_OBJECTIVES_HPP
#define EPICTRL_OBJECTIVES_HPP

#include <array>
#include <string>
#include <vector>

#include "epictrl/grid.hpp"
#include "epictrl/model.hpp"
#include "epictrl/parallel.hpp"

namespace epictrl {

struct Scenario;

// Cost is minimized; Effectiveness and Feasibility are maximized.
enum class ObjectiveKind { Cost, Effectiveness, Feasibility };

constexpr bool maximizes(ObjectiveKind kind) { return kind != ObjectiveKind::Cost; }

const char* objective_name(ObjectiveKind kind);

struct ObjectiveWeights {
    double lambda1 = 0; // weight on E
    double lambda2 = 0; // weight on Ia
    double lambda3 = 0; // weight on Is
    double lambda4 = 0; // weight on H
    std::array<double, 9> b{}; // per-control cost factors, all > 0
    double sigma = 0;   // discount rate

    friend bool operator==(const ObjectiveWeights&, const ObjectiveWeights&) = default;
};

// Quadratic-effort running cost: lambda-weighted infections plus
// (1/2) sum b_i u_i^2.
double lagrangian_cost(const CompartmentState& x, const ControlVector& u,
                       const ObjectiveWeights& w);

// Discounted coverage: b-weighted control reach over the compartments each
// control touches, times exp(-sigma t).  Linear in u.
double lagrangian_effectiveness(const CompartmentState& x, const ControlVector& u,
                                const ObjectiveWeights& w, double t);

// The cost Lagrangian discounted by exp(-sigma t).
double lagrangian_feasibility(const CompartmentState& x, const ControlVector& u,
                              const ObjectiveWeights& w, double t);

// Dispatch on kind; Cost ignores t.
double lagrangian(ObjectiveKind kind, const CompartmentState& x, const ControlVector& u,
                  const ObjectiveWeights& w, double t);

// Composite-trapezoid value of the selected objective along a trajectory and
// schedule sharing one grid.
double evaluate_objective(const Trajectory& states, const ControlSchedule& controls,
                          const ObjectiveWeights& w, ObjectiveKind kind,
                          ExecPolicy policy = ExecPolicy::Parallel);

// Numerical verdict on the optimal-control existence conditions: control box
// closed/convex/bounded, linear growth bounds on the dynamics, sampled
// convexity of the running cost in u, and coercivity of the quadratic effort.
struct ExistenceReport {
    bool control_set_ok = false;
    double bound_f1 = 0;
    double bound_f2 = 0;
    int convexity_samples_passed = 0;
    int convexity_samples_total = 0;
    double coercivity_a0 = 0;
    std::vector<std::string> warnings;

    bool all_passed() const {
        return control_set_ok && convexity_samples_passed == convexity_samples_total &&
               convexity_samples_total > 0 && coercivity_a0 > 0;
    }
};

ExistenceReport check_existence(const Scenario& scenario, ObjectiveKind kind,
                                int convexity_samples = 1000, unsigned seed = 42,
                                ExecPolicy policy = ExecPolicy::Parallel);

// Seed for all sampling defaults: EPICTRL_SEED from the environment, else 42.
unsigned default_seed();

} // namespace epictrl

#endif
