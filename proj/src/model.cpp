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
#include "epictrl/model.hpp"

#include <cmath>

#include "epictrl/errors.hpp"

namespace epictrl {

namespace {

bool all_finite(const std::array<double, 7>& a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

void require_finite(const CompartmentState& x, const char* who) {
    if (!all_finite(x.as_array())) throw InvalidInput(std::string(who) + ": non-finite state");
}

void require_finite(const ModelParams& p, const char* who) {
    const double fields[] = {p.tau_ei_a, p.tau_ia_is, p.tau_ia_r, p.tau_is_r, p.tau_is_h,
                             p.tau_is_d, p.tau_h_r,   p.tau_h_d,  p.tau_r_s,  p.zeta_ia_s,
                             p.zeta_is_s, p.zeta_h_s, p.N};
    for (double v : fields)
        if (!std::isfinite(v)) throw InvalidInput(std::string(who) + ": non-finite parameter");
}

void require_finite(const ControlVector& u, const char* who) {
    for (double v : u)
        if (!std::isfinite(v)) throw InvalidInput(std::string(who) + ": non-finite control");
}

// Per-capita flows shared by every vector-field variant.  Evaluating each
// product exactly once, in one fixed order, keeps the u = 0 specializations
// bitwise identical across rhs_controlled, f1_affine, and rhs_uncontrolled.
struct Flows {
    double lam;    // force of infection
    double lam_sn; // lam * S / N
    double e_out;  // tau_ei_a * E
    double ia_out; // (tau_ia_is + tau_ia_r) * Ia
    double is_in;  // tau_ia_is * Ia
    double is_out; // (tau_is_r + tau_is_h + tau_is_d) * Is
    double h_in;   // tau_is_h * Is
    double h_r;    // tau_h_r * H
    double h_d;    // tau_h_d * H
    double is_r;   // tau_is_r * Is
    double ia_r;   // tau_ia_r * Ia
    double is_d;   // tau_is_d * Is
    double r_out;  // tau_r_s * R
};

Flows flows(const CompartmentState& x, const ModelParams& p) {
    Flows f;
    f.lam = p.zeta_ia_s * x.Ia + p.zeta_is_s * x.Is + p.zeta_h_s * x.H;
    f.lam_sn = f.lam * x.S / p.N;
    f.e_out = p.tau_ei_a * x.E;
    f.ia_out = (p.tau_ia_is + p.tau_ia_r) * x.Ia;
    f.is_in = p.tau_ia_is * x.Ia;
    f.is_out = (p.tau_is_r + p.tau_is_h + p.tau_is_d) * x.Is;
    f.h_in = p.tau_is_h * x.Is;
    f.h_r = p.tau_h_r * x.H;
    f.h_d = p.tau_h_d * x.H;
    f.is_r = p.tau_is_r * x.Is;
    f.ia_r = p.tau_ia_r * x.Ia;
    f.is_d = p.tau_is_d * x.Is;
    f.r_out = p.tau_r_s * x.R;
    return f;
}

} // namespace

double force_of_infection(const CompartmentState& x, const ModelParams& p) {
    require_finite(x, "force_of_infection");
    require_finite(p, "force_of_infection");
    return p.zeta_ia_s * x.Ia + p.zeta_is_s * x.Is + p.zeta_h_s * x.H;
}

DerivativeVector rhs_uncontrolled(const CompartmentState& x, const ModelParams& p) {
    require_finite(x, "rhs_uncontrolled");
    require_finite(p, "rhs_uncontrolled");
    const Flows f = flows(x, p);
    DerivativeVector d;
    d.dS = -f.lam_sn + f.r_out;
    d.dE = f.lam_sn - f.e_out;
    d.dIa = f.e_out - f.ia_out;
    d.dIs = f.is_in - f.is_out;
    d.dH = f.h_in - (p.tau_h_r + p.tau_h_d) * x.H;
    d.dR = f.is_r + f.ia_r + f.h_r - f.r_out;
    d.dD = f.h_d + f.is_d;
    return d;
}

DerivativeVector rhs_controlled(const CompartmentState& x, const ControlVector& u,
                                const ModelParams& p) {
    require_finite(x, "rhs_controlled");
    require_finite(p, "rhs_controlled");
    require_finite(u, "rhs_controlled");
    const Flows f = flows(x, p);
    // Gate factors; k_exp may go negative when the u1/u3/u4/u5 bounds sum past
    // 1, which is preserved as modeled and only reported by the callers.
    const double k_exp = 1.0 - u[0] - u[2] - u[3] - u[4];
    const double k_r = 1.0 - u[2] - u[3] - u[4];
    const double k_e = 1.0 - u[5];
    const double k_is = 1.0 - u[6] - u[7];
    const double k_hd = 1.0 - u[8];
    DerivativeVector d;
    d.dS = -(k_exp * f.lam_sn) - u[1] * f.lam_sn + k_r * f.r_out;
    d.dE = k_exp * f.lam_sn + u[1] * f.lam_sn - k_e * f.e_out;
    d.dIa = k_e * f.e_out - k_e * f.ia_out;
    d.dIs = k_e * f.is_in - k_is * f.is_out;
    d.dH = k_is * f.h_in - k_hd * f.h_d - u[8] * f.h_r;
    d.dR = k_is * f.is_r + k_e * f.ia_r + u[8] * f.h_r - k_r * f.r_out;
    d.dD = k_hd * f.h_d + k_is * f.is_d;
    return d;
}

DerivativeVector f1_affine(const CompartmentState& x, const ModelParams& p) {
    require_finite(x, "f1_affine");
    require_finite(p, "f1_affine");
    const Flows f = flows(x, p);
    DerivativeVector d;
    d.dS = -f.lam_sn + f.r_out;
    d.dE = f.lam_sn - f.e_out;
    d.dIa = f.e_out - f.ia_out;
    d.dIs = f.is_in - f.is_out;
    d.dH = f.h_in - f.h_d;
    d.dR = f.is_r + f.ia_r - f.r_out;
    d.dD = f.h_d + f.is_d;
    return d;
}

ControlMatrix f2_affine(const CompartmentState& x, const ModelParams& p) {
    require_finite(x, "f2_affine");
    require_finite(p, "f2_affine");
    const Flows f = flows(x, p);
    ControlMatrix c{}; // structural zeros stay exactly 0.0
    c[0][0] = f.lam_sn;
    c[0][1] = -f.lam_sn;
    c[0][2] = c[0][3] = c[0][4] = f.lam_sn - f.r_out;
    c[1][0] = c[1][2] = c[1][3] = c[1][4] = -f.lam_sn;
    c[1][1] = f.lam_sn;
    c[1][5] = f.e_out;
    c[2][5] = -f.e_out + f.ia_out;
    c[3][5] = -f.is_in;
    c[3][6] = c[3][7] = f.is_out;
    c[4][6] = c[4][7] = -f.h_in;
    c[4][8] = (p.tau_h_d - p.tau_h_r) * x.H;
    c[5][2] = c[5][3] = c[5][4] = f.r_out;
    c[5][5] = -f.ia_r;
    c[5][6] = c[5][7] = -f.is_r;
    c[5][8] = f.h_r;
    c[6][6] = c[6][7] = -f.is_d;
    c[6][8] = -f.h_d;
    return c;
}

DerivativeVector apply_control_matrix(const ControlMatrix& c, const ControlVector& u) {
    std::array<double, 7> out{};
    for (std::size_t row = 0; row < 7; ++row) {
        double acc = 0;
        for (std::size_t col = 0; col < 9; ++col) acc += c[row][col] * u[col];
        out[row] = acc;
    }
    return {out[0], out[1], out[2], out[3], out[4], out[5], out[6]};
}

NormBounds norm_bounds(const ModelParams& p) {
    require_finite(p, "norm_bounds");
    auto sq = [](double v) { return v * v; };
    const double zsum = p.zeta_ia_s + p.zeta_is_s + p.zeta_h_s;
    const double f1 = sq(p.tau_ia_is + p.tau_ia_r) + sq(p.tau_h_d) +
                      sq(p.tau_h_d + p.tau_is_d) +
                      sq(p.tau_is_r + p.tau_is_h + p.tau_is_d) + 2.0 * sq(zsum) +
                      p.tau_is_r * (p.tau_is_r + 2.0 * p.tau_ia_r) + sq(p.tau_ia_is) +
                      sq(p.tau_is_h) + sq(p.tau_ia_r) + 2.0 * sq(p.tau_r_s) +
                      2.0 * sq(p.tau_ei_a);
    const double f2 = 10.0 * sq(zsum) + sq(p.tau_ia_is + p.tau_ia_r) + 2.0 * sq(p.tau_ei_a) +
                      2.0 * sq(p.tau_is_r + p.tau_is_h + p.tau_is_d) + sq(p.tau_ia_is) +
                      2.0 * sq(p.tau_is_h) + sq(p.tau_h_d - p.tau_h_r) + 3.0 * sq(p.tau_r_s) +
                      sq(p.tau_ia_r) + 2.0 * sq(p.tau_is_r) + sq(p.tau_h_r) +
                      2.0 * sq(p.tau_is_d) + sq(p.tau_h_d);
    return {p.N * std::sqrt(f1), p.N * std::sqrt(f2)};
}

} // namespace epictrl
