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
#ifndef EPICTRL_MODEL_HPP
#define EPICTRL_MODEL_HPP

#include <array>
#include <cstddef>

namespace epictrl {

// Daily transition rates between compartments and per-contact infection
// probabilities.  All rates live in [0, 1]; N is the (constant) population.
struct ModelParams {
    double tau_ei_a  = 0; // E  -> Ia  incubation exit
    double tau_ia_is = 0; // Ia -> Is  symptom onset
    double tau_ia_r  = 0; // Ia -> R   silent recovery
    double tau_is_r  = 0; // Is -> R   home recovery
    double tau_is_h  = 0; // Is -> H   hospital admission
    double tau_is_d  = 0; // Is -> D   out-of-hospital death
    double tau_h_r   = 0; // H  -> R   hospital discharge
    double tau_h_d   = 0; // H  -> D   in-hospital death
    double tau_r_s   = 0; // R  -> S   immunity loss
    double zeta_ia_s = 0; // contact infectivity of Ia
    double zeta_is_s = 0; // contact infectivity of Is
    double zeta_h_s  = 0; // contact infectivity of H
    double N         = 0;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// People counts per compartment.  The seven components sum to N.
struct CompartmentState {
    double S = 0, E = 0, Ia = 0, Is = 0, H = 0, R = 0, D = 0;

    std::array<double, 7> as_array() const { return {S, E, Ia, Is, H, R, D}; }
    static CompartmentState from_array(const std::array<double, 7>& a) {
        return {a[0], a[1], a[2], a[3], a[4], a[5], a[6]};
    }
    friend bool operator==(const CompartmentState&, const CompartmentState&) = default;
};

// Time derivative of a CompartmentState; components sum to zero.
struct DerivativeVector {
    double dS = 0, dE = 0, dIa = 0, dIs = 0, dH = 0, dR = 0, dD = 0;

    std::array<double, 7> as_array() const { return {dS, dE, dIa, dIs, dH, dR, dD}; }
    double sum() const { return dS + dE + dIa + dIs + dH + dR + dD; }
    friend bool operator==(const DerivativeVector&, const DerivativeVector&) = default;
};

// Intervention intensities u1..u9, each in [0, bound_i]; u[0] is u1.
using ControlVector = std::array<double, 9>;

// Coefficient matrix of the control-affine term; c[row][col] with row 0 = S
// and col 0 = u1.  Structurally zero entries are exactly 0.0.
using ControlMatrix = std::array<std::array<double, 9>, 7>;

// Sum of the infectious pools weighted by their contact infectivities,
// not yet scaled by S/N.
double force_of_infection(const CompartmentState& x, const ModelParams& p);

// Dynamics without interventions.
DerivativeVector rhs_uncontrolled(const CompartmentState& x, const ModelParams& p);

// Dynamics under the nine interventions.  Note two quirks preserved from the
// model statement: at u = 0 the H and R rows differ from rhs_uncontrolled by
// exactly -/+ tau_h_r*H (hospital discharge is gated by u9 here), and the
// exposure factor (1 - u1 + u2 - u3 - u4 - u5) is not clamped, so bound
// combinations summing past 1 can turn it negative.
DerivativeVector rhs_controlled(const CompartmentState& x, const ControlVector& u,
                                const ModelParams& p);

// Control-free part of the affine decomposition; equals rhs_controlled at u = 0.
DerivativeVector f1_affine(const CompartmentState& x, const ModelParams& p);

// Control-linear part: rhs_controlled(x, u) = f1_affine(x) + f2_affine(x) * u.
ControlMatrix f2_affine(const CompartmentState& x, const ModelParams& p);

// Matrix-vector product for the affine identity above.
DerivativeVector apply_control_matrix(const ControlMatrix& c, const ControlVector& u);

struct NormBounds {
    double bound_f1 = 0; // dominates ||f1(x)||_2 for states with components in [0, N]
    double bound_f2 = 0; // dominates ||f2(x)||_F likewise
};

// Closed-form linear-growth bounds on the affine decomposition, used by the
// existence checker.
NormBounds norm_bounds(const ModelParams& p);

} // namespace epictrl

#endif
