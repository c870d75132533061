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
#include <chrono>
#include <cstdio>
#include <functional>

#include "epictrl/scenario.hpp"
#include "epictrl/solver.hpp"

namespace {

epictrl::Scenario bench_scenario(std::size_t steps) {
    epictrl::Scenario s;
    s.params.tau_ei_a = 0.25;
    s.params.tau_ia_is = 0.12;
    s.params.tau_ia_r = 0.10;
    s.params.tau_is_r = 0.10;
    s.params.tau_is_h = 0.03;
    s.params.tau_is_d = 0.004;
    s.params.tau_h_r = 0.07;
    s.params.tau_h_d = 0.03;
    s.params.tau_r_s = 0.005;
    s.params.zeta_ia_s = 0.25;
    s.params.zeta_is_s = 0.35;
    s.params.zeta_h_s = 0.05;
    s.params.N = 100000;
    s.initial = {98000, 1000, 600, 300, 80, 20, 0};
    s.horizon = 90;
    s.steps = steps;
    s.weights.lambda1 = 1;
    s.weights.lambda2 = 1;
    s.weights.lambda3 = 2;
    s.weights.lambda4 = 5;
    s.weights.b = {2, 4, 1, 1, 1, 3, 2, 2, 2};
    s.weights.sigma = 0.05;
    s.bounds = {0.5, 0.1, 0.2, 0.1, 0.2, 0.6, 0.5, 0.4, 0.8};
    return s;
}

double time_ms(int repetitions, const std::function<void()>& fn) {
    fn(); // warm up
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < repetitions; ++i) fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count() / repetitions;
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s serial %9.3f ms   parallel %9.3f ms   speedup %5.2fx\n", name,
                serial_ms, parallel_ms, serial_ms / parallel_ms);
}

} // namespace

int main() {
    using namespace epictrl;
    const Scenario scenario = bench_scenario(200000);
    const TimeGrid grid = scenario.grid();

    const ControlSchedule zero = ControlSchedule::zeros(grid);
    const ForwardRun fwd = integrate_forward(scenario, zero);
    const AdjointTrajectory adj =
        integrate_backward(scenario, fwd.trajectory, zero, ObjectiveKind::Cost);

    volatile double guard = 0;

    const double obj_serial = time_ms(20, [&] {
        guard = guard + evaluate_objective(fwd.trajectory, zero, scenario.weights,
                                           ObjectiveKind::Cost, ExecPolicy::Serial);
    });
    const double obj_parallel = time_ms(20, [&] {
        guard = guard + evaluate_objective(fwd.trajectory, zero, scenario.weights,
                                           ObjectiveKind::Cost, ExecPolicy::Parallel);
    });
    report("evaluate_objective", obj_serial, obj_parallel);

    const double upd_serial = time_ms(20, [&] {
        const ControlSchedule u =
            update_controls_cost(fwd.trajectory, adj, scenario, ExecPolicy::Serial);
        guard = guard + u.nodes.back()[0];
    });
    const double upd_parallel = time_ms(20, [&] {
        const ControlSchedule u =
            update_controls_cost(fwd.trajectory, adj, scenario, ExecPolicy::Parallel);
        guard = guard + u.nodes.back()[0];
    });
    report("update_controls_cost", upd_serial, upd_parallel);

    const double chk_serial = time_ms(5, [&] {
        const ExistenceReport r = check_existence(scenario, ObjectiveKind::Cost, 200000, 42,
                                                  ExecPolicy::Serial);
        guard = guard + r.coercivity_a0;
    });
    const double chk_parallel = time_ms(5, [&] {
        const ExistenceReport r = check_existence(scenario, ObjectiveKind::Cost, 200000, 42,
                                                  ExecPolicy::Parallel);
        guard = guard + r.coercivity_a0;
    });
    report("check_existence sampling", chk_serial, chk_parallel);

    return guard == -1 ? 1 : 0;
}
