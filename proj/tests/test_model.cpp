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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "epictrl/errors.hpp"
#include "epictrl/model.hpp"
#include "support.hpp"

using namespace epictrl;
using namespace testsupport;

namespace {
const ControlVector kControls = {0.2, 0.1, 0.05, 0.05, 0.1, 0.3, 0.2, 0.1, 0.5};
}

TEST_CASE("force of infection weights the three contagious pools") {
    // 0.2*15 + 0.3*10 + 0.1*4
    CHECK(force_of_infection(tiny_state(), tiny_params()) ==
          doctest::Approx(6.4).epsilon(1e-14));
}

TEST_CASE("uncontrolled derivative matches the hand-computed flows") {
    const DerivativeVector d = rhs_uncontrolled(tiny_state(), tiny_params());
    CHECK(d.dS == doctest::Approx(-6.07).epsilon(1e-12));
    CHECK(d.dE == doctest::Approx(2.08).epsilon(1e-12));
    CHECK(d.dIa == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.dIs == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(d.dH == doctest::Approx(0.18).epsilon(1e-12));
    CHECK(d.dR == doctest::Approx(2.73).epsilon(1e-12));
    CHECK(d.dD == doctest::Approx(0.18).epsilon(1e-12));
}

TEST_CASE("controlled derivative matches the hand-computed flows") {
    const DerivativeVector d = rhs_controlled(tiny_state(), kControls, tiny_params());
    CHECK(d.dS == doctest::Approx(-4.248).epsilon(1e-12));
    CHECK(d.dE == doctest::Approx(1.456).epsilon(1e-12));
    CHECK(d.dIa == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(d.dIs == doctest::Approx(-0.07).epsilon(1e-12));
    CHECK(d.dH == doctest::Approx(0.19).epsilon(1e-12));
    CHECK(d.dR == doctest::Approx(1.862).epsilon(1e-12));
    CHECK(d.dD == doctest::Approx(0.11).epsilon(1e-12));
}

TEST_CASE("derivatives conserve total population") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        const ModelParams p = random_params(rng);
        const CompartmentState x = random_state(rng, p.N);
        const ControlVector u = random_controls(rng, {1, 1, 1, 1, 1, 1, 1, 1, 1});
        CHECK(std::abs(rhs_uncontrolled(x, p).sum()) <= 1e-12 * p.N);
        CHECK(std::abs(rhs_controlled(x, u, p).sum()) <= 1e-12 * p.N);
        CHECK(std::abs(f1_affine(x, p).sum()) <= 1e-12 * p.N);
        CHECK(std::abs(apply_control_matrix(f2_affine(x, p), u).sum()) <= 1e-12 * p.N);
    }
}

TEST_CASE("zero controls reproduce the drift term bitwise") {
    std::mt19937 rng(11);
    for (int i = 0; i < 50; ++i) {
        const ModelParams p = random_params(rng);
        const CompartmentState x = random_state(rng, p.N);
        const DerivativeVector at_zero = rhs_controlled(x, ControlVector{}, p);
        CHECK(at_zero == f1_affine(x, p));
    }
}

TEST_CASE("zero controls split the hospital discharge differently than the "
          "uncontrolled system") {
    const ModelParams p = tiny_params();
    const CompartmentState x = tiny_state();
    const DerivativeVector at_zero = rhs_controlled(x, ControlVector{}, p);
    const DerivativeVector plain = rhs_uncontrolled(x, p);
    CHECK(at_zero.dS == plain.dS);
    CHECK(at_zero.dE == plain.dE);
    CHECK(at_zero.dIa == plain.dIa);
    CHECK(at_zero.dIs == plain.dIs);
    CHECK(at_zero.dD == plain.dD);
    // Recovery flow tau_h_r * H stays in H and never reaches R at u = 0.
    CHECK(std::abs(at_zero.dH - plain.dH - p.tau_h_r * x.H) <= 1e-12 * p.N);
    CHECK(std::abs(at_zero.dR - plain.dR + p.tau_h_r * x.H) <= 1e-12 * p.N);
}

TEST_CASE("controlled derivative is affine in the control vector") {
    std::mt19937 rng(13);
    for (int i = 0; i < 100; ++i) {
        const ModelParams p = random_params(rng);
        const CompartmentState x = random_state(rng, p.N);
        const ControlVector u = random_controls(rng, {1, 1, 1, 1, 1, 1, 1, 1, 1});
        const DerivativeVector direct = rhs_controlled(x, u, p);
        const DerivativeVector drift = f1_affine(x, p);
        const DerivativeVector coupled = apply_control_matrix(f2_affine(x, p), u);
        const auto a = direct.as_array();
        const auto b = drift.as_array();
        const auto c = coupled.as_array();
        for (std::size_t k = 0; k < 7; ++k) CHECK(std::abs(a[k] - (b[k] + c[k])) <= 1e-12 * p.N);
    }
}

TEST_CASE("control matrix columns for untouched compartments are zero") {
    const ControlMatrix c = f2_affine(tiny_state(), tiny_params());
    // Asymptomatic row reacts only to testing/treatment u6.
    for (std::size_t j : {0, 1, 2, 3, 4, 6, 7, 8}) CHECK(c[2][j] == 0.0);
    // Death row reacts only to u7, u8, u9.
    for (std::size_t j : {0, 1, 2, 3, 4, 5}) CHECK(c[6][j] == 0.0);
    // Exposure-side controls u1..u5 never touch Is, H, D rows.
    for (std::size_t r : {3, 4, 6})
        for (std::size_t j : {0, 1, 2, 3, 4}) CHECK(c[r][j] == 0.0);
}

TEST_CASE("non-finite inputs are rejected") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CompartmentState x = tiny_state();
    x.E = nan;
    CHECK_THROWS_AS(rhs_uncontrolled(x, tiny_params()), InvalidInput);
    CHECK_THROWS_AS(rhs_controlled(x, ControlVector{}, tiny_params()), InvalidInput);
    ModelParams p = tiny_params();
    p.tau_h_d = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(f1_affine(tiny_state(), p), InvalidInput);
    ControlVector u{};
    u[3] = nan;
    CHECK_THROWS_AS(rhs_controlled(tiny_state(), u, tiny_params()), InvalidInput);
}

TEST_CASE("growth-bound constants collapse to closed forms on sparse rates") {
    ModelParams p;
    p.tau_ei_a = p.tau_ia_is = p.tau_ia_r = p.tau_is_r = p.tau_is_h = p.tau_is_d = 0;
    p.tau_h_r = p.tau_h_d = p.tau_r_s = 0;
    p.zeta_ia_s = 0.1;
    p.zeta_is_s = 0;
    p.zeta_h_s = 0;
    p.N = 100;
    const NormBounds nb = norm_bounds(p);
    CHECK(nb.bound_f1 == doctest::Approx(100.0 * std::sqrt(0.02)).epsilon(1e-14));
    CHECK(nb.bound_f2 == doctest::Approx(100.0 * std::sqrt(0.1)).epsilon(1e-14));
}

TEST_CASE("growth-bound constants scale linearly with the population") {
    ModelParams p = tiny_params();
    const NormBounds one = norm_bounds(p);
    p.N = 2 * p.N;
    const NormBounds two = norm_bounds(p);
    CHECK(two.bound_f1 == doctest::Approx(2 * one.bound_f1).epsilon(1e-14));
    CHECK(two.bound_f2 == doctest::Approx(2 * one.bound_f2).epsilon(1e-14));
}

TEST_CASE("state array round-trip preserves every component") {
    const CompartmentState x = tiny_state();
    CHECK(CompartmentState::from_array(x.as_array()) == x);
    const DerivativeVector d = rhs_uncontrolled(x, tiny_params());
    const auto arr = d.as_array();
    CHECK(arr[0] == d.dS);
    CHECK(arr[6] == d.dD);
}
