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

// The parallel kernels must be drop-in replacements for the serial ones:
// identical bits out, not merely close.  Every kernel that takes an
// ExecPolicy is run both ways on the same inputs and compared with ==.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <random>
#include <vector>

#include "epictrl/objectives.hpp"
#include "epictrl/parallel.hpp"
#include "epictrl/scenario.hpp"
#include "epictrl/solver.hpp"
#include "support.hpp"

using namespace epictrl;
using namespace testsupport;

namespace {

struct Workbench {
    Scenario scenario;
    ForwardRun fwd;
    ControlSchedule controls;
    AdjointTrajectory adjoints;
};

Workbench make_workbench(ObjectiveKind kind) {
    Workbench w;
    w.scenario = load_scenario("reference.json");
    w.controls = ControlSchedule::zeros(w.scenario.grid());
    std::mt19937 rng(2026);
    for (auto& node : w.controls.nodes) node = random_controls(rng, w.scenario.bounds);
    w.fwd = integrate_forward(w.scenario, w.controls);
    w.adjoints = integrate_backward(w.scenario, w.fwd.trajectory, w.controls, kind);
    return w;
}

} // namespace

TEST_CASE("the index loop visits every slot exactly once under both policies") {
    for (const ExecPolicy policy : {ExecPolicy::Serial, ExecPolicy::Parallel}) {
        std::vector<std::atomic<int>> hits(10007);
        for_each_index(hits.size(), policy, [&](std::size_t i) { hits[i].fetch_add(1); });
        for (const auto& h : hits) CHECK(h.load() == 1);
        bool called = false;
        for_each_index(0, policy, [&](std::size_t) { called = true; });
        CHECK_FALSE(called);
    }
}

TEST_CASE("objective quadrature is policy independent bit for bit") {
    const Workbench w = make_workbench(ObjectiveKind::Cost);
    for (const ObjectiveKind kind :
         {ObjectiveKind::Cost, ObjectiveKind::Effectiveness, ObjectiveKind::Feasibility}) {
        const double serial = evaluate_objective(w.fwd.trajectory, w.controls,
                                                 w.scenario.weights, kind,
                                                 ExecPolicy::Serial);
        const double parallel = evaluate_objective(w.fwd.trajectory, w.controls,
                                                   w.scenario.weights, kind,
                                                   ExecPolicy::Parallel);
        CHECK(serial == parallel);
        CHECK(std::isfinite(serial));
    }
}

TEST_CASE("the cost control update is policy independent bit for bit") {
    const Workbench w = make_workbench(ObjectiveKind::Cost);
    const ControlSchedule serial =
        update_controls_cost(w.fwd.trajectory, w.adjoints, w.scenario, ExecPolicy::Serial);
    const ControlSchedule parallel =
        update_controls_cost(w.fwd.trajectory, w.adjoints, w.scenario, ExecPolicy::Parallel);
    CHECK(serial == parallel);
}

TEST_CASE("the bang-bang update is policy independent bit for bit") {
    const Workbench w = make_workbench(ObjectiveKind::Effectiveness);
    const ControlSchedule serial = update_controls_effectiveness(
        w.fwd.trajectory, w.adjoints, w.scenario, w.controls, ExecPolicy::Serial);
    const ControlSchedule parallel = update_controls_effectiveness(
        w.fwd.trajectory, w.adjoints, w.scenario, w.controls, ExecPolicy::Parallel);
    CHECK(serial == parallel);
}

TEST_CASE("the feasibility update and its escape count are policy independent") {
    const Workbench w = make_workbench(ObjectiveKind::Feasibility);
    const FeasibilityUpdate serial = update_controls_feasibility(
        w.fwd.trajectory, w.adjoints, w.scenario, ExecPolicy::Serial);
    const FeasibilityUpdate parallel = update_controls_feasibility(
        w.fwd.trajectory, w.adjoints, w.scenario, ExecPolicy::Parallel);
    CHECK(serial.schedule == parallel.schedule);
    CHECK(serial.out_of_box == parallel.out_of_box);
}

TEST_CASE("the existence report is policy independent in every field") {
    const Scenario s = load_scenario("reference.json");
    for (const ObjectiveKind kind :
         {ObjectiveKind::Cost, ObjectiveKind::Effectiveness, ObjectiveKind::Feasibility}) {
        const ExistenceReport a = check_existence(s, kind, 2000, 42, ExecPolicy::Serial);
        const ExistenceReport b = check_existence(s, kind, 2000, 42, ExecPolicy::Parallel);
        CHECK(a.control_set_ok == b.control_set_ok);
        CHECK(a.bound_f1 == b.bound_f1);
        CHECK(a.bound_f2 == b.bound_f2);
        CHECK(a.convexity_samples_passed == b.convexity_samples_passed);
        CHECK(a.convexity_samples_total == b.convexity_samples_total);
        CHECK(a.coercivity_a0 == b.coercivity_a0);
        CHECK(a.warnings == b.warnings);
    }
}

TEST_CASE("repeated full sweeps under the default policy agree exactly") {
    const Scenario s = load_scenario("reference.json");
    const Solution a = forward_backward_sweep(s, ObjectiveKind::Effectiveness);
    const Solution b = forward_backward_sweep(s, ObjectiveKind::Effectiveness);
    CHECK(a.objective == b.objective);
    CHECK(a.iterations == b.iterations);
    CHECK(a.states == b.states);
    CHECK(a.controls == b.controls);
    CHECK(a.adjoints == b.adjoints);
    CHECK(a.warnings == b.warnings);
}
