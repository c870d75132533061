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
#ifndef EPICTRL_TESTS_SUPPORT_HPP
#define EPICTRL_TESTS_SUPPORT_HPP

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "epictrl/model.hpp"
#include "epictrl/objectives.hpp"
#include "epictrl/scenario.hpp"

namespace testsupport {

// Same values as tests/data/minimal.json, for tests that need the struct
// without touching the filesystem.
inline epictrl::ModelParams tiny_params() {
    epictrl::ModelParams p;
    p.tau_ei_a = 0.2;
    p.tau_ia_is = 0.1;
    p.tau_ia_r = 0.1;
    p.tau_is_r = 0.1;
    p.tau_is_h = 0.05;
    p.tau_is_d = 0.01;
    p.tau_h_r = 0.06;
    p.tau_h_d = 0.02;
    p.tau_r_s = 0.01;
    p.zeta_ia_s = 0.2;
    p.zeta_is_s = 0.3;
    p.zeta_h_s = 0.1;
    p.N = 1000;
    return p;
}

inline epictrl::CompartmentState tiny_state() { return {950, 20, 15, 10, 4, 1, 0}; }

inline epictrl::ObjectiveWeights tiny_weights() {
    epictrl::ObjectiveWeights w;
    w.lambda1 = 1;
    w.lambda2 = 2;
    w.lambda3 = 3;
    w.lambda4 = 4;
    w.b = {0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4, 4.5};
    w.sigma = 0.1;
    return w;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("test fixture missing: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline epictrl::Scenario load_scenario(const std::string& name) {
    return epictrl::parse_scenario(read_file(std::string(EPICTRL_SCENARIO_DIR) + "/" + name));
}

inline std::string fixture_text(const std::string& name) {
    return read_file(std::string(EPICTRL_TEST_DATA_DIR) + "/" + name);
}

inline epictrl::CompartmentState random_state(std::mt19937& rng, double N) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    return {dist(rng) * N, dist(rng) * N, dist(rng) * N, dist(rng) * N,
            dist(rng) * N, dist(rng) * N, dist(rng) * N};
}

// Random point on the positive simplex scaled to N: a feasible population.
inline epictrl::CompartmentState random_feasible_state(std::mt19937& rng, double N) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::array<double, 7> parts;
    double sum = 0;
    for (double& v : parts) {
        v = dist(rng);
        sum += v;
    }
    for (double& v : parts) v = v / sum * N;
    return epictrl::CompartmentState::from_array(parts);
}

inline epictrl::ControlVector random_controls(std::mt19937& rng,
                                              const std::array<double, 9>& bounds) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    epictrl::ControlVector u;
    for (std::size_t i = 0; i < 9; ++i) u[i] = dist(rng) * bounds[i];
    return u;
}

inline epictrl::ModelParams random_params(std::mt19937& rng) {
    std::uniform_real_distribution<double> rate(0.0, 0.5);
    std::uniform_real_distribution<double> contact(0.0, 1.0);
    epictrl::ModelParams p;
    p.tau_ei_a = rate(rng);
    p.tau_ia_is = rate(rng);
    p.tau_ia_r = rate(rng);
    p.tau_is_r = rate(rng);
    p.tau_is_h = rate(rng);
    p.tau_is_d = rate(rng);
    p.tau_h_r = rate(rng);
    p.tau_h_d = rate(rng);
    p.tau_r_s = rate(rng);
    p.zeta_ia_s = contact(rng);
    p.zeta_is_s = contact(rng);
    p.zeta_h_s = contact(rng);
    p.N = 1000.0 + contact(rng) * 99000.0;
    return p;
}

} // namespace testsupport

#endif
