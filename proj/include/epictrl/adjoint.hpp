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
#ifndef EPICTRL_ADJOINT_HPP
#define EPICTRL_ADJOINT_HPP

#include <algorithm>
#include <array>
#include <cmath>

#include "epictrl/model.hpp"
#include "epictrl/objectives.hpp"

namespace epictrl {

// Costates alpha1..alpha7 paired with (S, E, Ia, Is, H, R, D).  alpha7 is
// constant along every adjoint system here and 0 under transversality.
struct AdjointState {
    double alpha1 = 0, alpha2 = 0, alpha3 = 0, alpha4 = 0, alpha5 = 0, alpha6 = 0,
           alpha7 = 0;

    std::array<double, 7> as_array() const {
        return {alpha1, alpha2, alpha3, alpha4, alpha5, alpha6, alpha7};
    }
    static AdjointState from_array(const std::array<double, 7>& a) {
        return {a[0], a[1], a[2], a[3], a[4], a[5], a[6]};
    }
    friend bool operator==(const AdjointState&, const AdjointState&) = default;
};

// alpha . rhs_controlled(x, u) plus the kind's Lagrangian.
double hamiltonian(const CompartmentState& x, const ControlVector& u,
                   const AdjointState& alpha, const ModelParams& p,
                   const ObjectiveWeights& w, double t, ObjectiveKind kind);

// Analytic d(alpha)/dt = -dH/dx.  The three kinds share one costate-difference
// skeleton and differ only in source terms; component 7 is always 0.
AdjointState adjoint_rhs(const CompartmentState& x, const ControlVector& u,
                         const AdjointState& alpha, const ModelParams& p,
                         const ObjectiveWeights& w, double t, ObjectiveKind kind);

// Analytic dH/du.  For Effectiveness this is independent of u (the switching
// vector of the bang-bang characterization).
std::array<double, 9> hamiltonian_grad_u(const CompartmentState& x, const ControlVector& u,
                                         const AdjointState& alpha, const ModelParams& p,
                                         const ObjectiveWeights& w, double t,
                                         ObjectiveKind kind);

// Unclamped stationary controls of the quadratic-effort Hamiltonian: the
// unique solutions of dH/du_i = 0 for Cost, reused by the Feasibility rule.
// hamiltonian_grad_u(Cost) vanishes exactly at u = omega_star.
std::array<double, 9> omega_star(const CompartmentState& x, const AdjointState& alpha,
                                 const ModelParams& p, const ObjectiveWeights& w);

// Central-difference gradient of f in the state components, with step
// h * max(1, |x_j|) per component.  Exact on quadratics up to rounding.
template <typename F>
std::array<double, 7> fd_grad_state(F&& f, const CompartmentState& x, double h);

// Central-difference gradient of the Hamiltonian in the state; verification
// oracle for adjoint_rhs (which must equal its negation).
std::array<double, 7> fd_grad_state(const CompartmentState& x, const ControlVector& u,
                                    const AdjointState& alpha, const ModelParams& p,
                                    const ObjectiveWeights& w, double t, ObjectiveKind kind,
                                    double h = 1e-6);

// Same scheme in the control components; oracle for hamiltonian_grad_u.
std::array<double, 9> fd_grad_control(const CompartmentState& x, const ControlVector& u,
                                      const AdjointState& alpha, const ModelParams& p,
                                      const ObjectiveWeights& w, double t,
                                      ObjectiveKind kind, double h = 1e-6);

template <typename F>
std::array<double, 7> fd_grad_state(F&& f, const CompartmentState& x, double h) {
    std::array<double, 7> g{};
    const std::array<double, 7> base = x.as_array();
    for (std::size_t j = 0; j < 7; ++j) {
        const double step = h * std::max(1.0, std::abs(base[j]));
        std::array<double, 7> lo = base, hi = base;
        lo[j] -= step;
        hi[j] += step;
        g[j] = (f(CompartmentState::from_array(hi)) - f(CompartmentState::from_array(lo))) /
               (2.0 * step);
    }
    return g;
}

} // namespace epictrl

#endif
