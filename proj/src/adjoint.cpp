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
#include "epictrl/adjoint.hpp"

#include <cmath>

#include "epictrl/errors.hpp"

namespace epictrl {

namespace {

void require_finite_alpha(const AdjointState& a, const char* who) {
    for (double v : a.as_array())
        if (!std::isfinite(v)) throw InvalidInput(std::string(who) + ": non-finite costate");
}

void require_positive_step(double h, const char* who) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw InvalidInput(std::string(who) + ": step must be positive");
}

} // namespace

double hamiltonian(const CompartmentState& x, const ControlVector& u,
                   const AdjointState& alpha, const ModelParams& p,
                   const ObjectiveWeights& w, double t, ObjectiveKind kind) {
    require_finite_alpha(alpha, "hamiltonian");
    const DerivativeVector f = rhs_controlled(x, u, p);
    const std::array<double, 7> fv = f.as_array();
    const std::array<double, 7> av = alpha.as_array();
    double dot = 0;
    for (std::size_t i = 0; i < 7; ++i) dot += av[i] * fv[i];
    return dot + lagrangian(kind, x, u, w, t);
}

AdjointState adjoint_rhs(const CompartmentState& x, const ControlVector& u,
                         const AdjointState& alpha, const ModelParams& p,
                         const ObjectiveWeights& w, double t, ObjectiveKind kind) {
    require_finite_alpha(alpha, "adjoint_rhs");
    const double lam = force_of_infection(x, p); // validates x and p
    for (double v : u)
        if (!std::isfinite(v)) throw InvalidInput("adjoint_rhs: non-finite control");
    if (!std::isfinite(t)) throw InvalidInput("adjoint_rhs: non-finite time");

    const double a1 = alpha.alpha1, a2 = alpha.alpha2, a3 = alpha.alpha3,
                 a4 = alpha.alpha4, a5 = alpha.alpha5, a6 = alpha.alpha6,
                 a7 = alpha.alpha7;
    const double k_exp = 1.0 - u[0] + u[1] - u[2] - u[3] - u[4];
    const double k_r = 1.0 - u[2] - u[3] - u[4];
    const double k_e = 1.0 - u[5];
    const double k_is = 1.0 - u[6] - u[7];
    const double sn = x.S / p.N;

    // Source terms: the lambda weights for the quadratic-effort objectives
    // (discounted for Feasibility), the b-weighted control reach for
    // Effectiveness.  The costate-difference skeleton is common to all three.
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0, s5 = 0, s6 = 0;
    switch (kind) {
    case ObjectiveKind::Cost:
        s2 = w.lambda1;
        s3 = w.lambda2;
        s4 = w.lambda3;
        s5 = w.lambda4;
        break;
    case ObjectiveKind::Feasibility: {
        const double disc = std::exp(-w.sigma * t);
        s2 = w.lambda1 * disc;
        s3 = w.lambda2 * disc;
        s4 = w.lambda3 * disc;
        s5 = w.lambda4 * disc;
        break;
    }
    case ObjectiveKind::Effectiveness: {
        const double disc = std::exp(-w.sigma * t);
        s1 = (w.b[0] * u[0] + w.b[1] * u[1] + w.b[2] * u[2] + w.b[3] * u[3] +
              w.b[4] * u[4]) *
             disc;
        s2 = w.b[5] * u[5] * disc;
        s3 = w.b[5] * u[5] * disc;
        s4 = (w.b[6] * u[6] + w.b[7] * u[7]) * disc;
        s5 = w.b[8] * u[8] * disc;
        s6 = (w.b[2] * u[2] + w.b[3] * u[3] + w.b[4] * u[4]) * disc;
        break;
    }
    }

    AdjointState d;
    d.alpha1 = (a1 - a2) / p.N * k_exp * lam - s1;
    d.alpha2 = (a2 - a3) * k_e * p.tau_ei_a - s2;
    d.alpha3 = (a1 - a2) * sn * k_exp * p.zeta_ia_s +
               k_e * ((a3 - a4) * p.tau_ia_is + (a3 - a6) * p.tau_ia_r) - s3;
    d.alpha4 = (a1 - a2) * sn * k_exp * p.zeta_is_s +
               k_is * ((a4 - a6) * p.tau_is_r + (a4 - a5) * p.tau_is_h +
                       (a4 - a7) * p.tau_is_d) -
               s4;
    d.alpha5 = (a1 - a2) * sn * k_exp * p.zeta_h_s + (1.0 - u[8]) * (a5 - a7) * p.tau_h_d +
               u[8] * (a5 - a6) * p.tau_h_r - s5;
    d.alpha6 = (a6 - a1) * k_r * p.tau_r_s - s6;
    d.alpha7 = 0.0;
    return d;
}

std::array<double, 9> hamiltonian_grad_u(const CompartmentState& x, const ControlVector& u,
                                         const AdjointState& alpha, const ModelParams& p,
                                         const ObjectiveWeights& w, double t,
                                         ObjectiveKind kind) {
    require_finite_alpha(alpha, "hamiltonian_grad_u");
    const ControlMatrix c = f2_affine(x, p); // validates x and p
    for (double v : u)
        if (!std::isfinite(v)) throw InvalidInput("hamiltonian_grad_u: non-finite control");
    if (!std::isfinite(t)) throw InvalidInput("hamiltonian_grad_u: non-finite time");

    // d(alpha . f)/du_i is column i of f2 dotted with alpha; the Lagrangian
    // contributes b_i u_i (Cost), its discounted form (Feasibility), or the
    // u-independent discounted reach coefficients (Effectiveness).
    std::array<double, 9> g{};
    const std::array<double, 7> av = alpha.as_array();
    for (std::size_t i = 0; i < 9; ++i) {
        double col = 0;
        for (std::size_t row = 0; row < 7; ++row) col += av[row] * c[row][i];
        g[i] = col;
    }
    switch (kind) {
    case ObjectiveKind::Cost:
        for (std::size_t i = 0; i < 9; ++i) g[i] += w.b[i] * u[i];
        break;
    case ObjectiveKind::Feasibility: {
        const double disc = std::exp(-w.sigma * t);
        for (std::size_t i = 0; i < 9; ++i) g[i] += w.b[i] * u[i] * disc;
        break;
    }
    case ObjectiveKind::Effectiveness: {
        const double disc = std::exp(-w.sigma * t);
        const std::array<double, 9> reach = {x.S,         x.S,         x.S + x.R,
                                             x.S + x.R,   x.S + x.R,   x.E + x.Ia,
                                             x.Is,        x.Is,        x.H};
        for (std::size_t i = 0; i < 9; ++i) g[i] += w.b[i] * reach[i] * disc;
        break;
    }
    }
    return g;
}

std::array<double, 9> omega_star(const CompartmentState& x, const AdjointState& alpha,
                                 const ModelParams& p, const ObjectiveWeights& w) {
    require_finite_alpha(alpha, "omega_star");
    const double lam = force_of_infection(x, p);
    const double a1 = alpha.alpha1, a2 = alpha.alpha2, a3 = alpha.alpha3,
                 a4 = alpha.alpha4, a5 = alpha.alpha5, a6 = alpha.alpha6,
                 a7 = alpha.alpha7;
    const double exposure = x.S * (a2 - a1) * lam / p.N;
    const double reentry = (a1 - a6) * p.tau_r_s * x.R;
    const double is_swap = (a5 * p.tau_is_h + a6 * p.tau_is_r + a7 * p.tau_is_d -
                            a4 * (p.tau_is_r + p.tau_is_h + p.tau_is_d)) *
                           x.Is;
    std::array<double, 9> omega;
    omega[0] = exposure / w.b[0];
    omega[1] = -exposure / w.b[1];
    omega[2] = exposure / w.b[2] + reentry / w.b[2];
    omega[3] = exposure / w.b[3] + reentry / w.b[3];
    omega[4] = exposure / w.b[4] + reentry / w.b[4];
    omega[5] = ((a3 - a2) * p.tau_ei_a * x.E + (a4 - a3) * p.tau_ia_is * x.Ia +
                (a6 - a3) * p.tau_ia_r * x.Ia) /
               w.b[5];
    omega[6] = is_swap / w.b[6];
    omega[7] = is_swap / w.b[7];
    omega[8] = ((a5 - a6) * p.tau_h_r + (a7 - a5) * p.tau_h_d) * x.H / w.b[8];
    return omega;
}

std::array<double, 7> fd_grad_state(const CompartmentState& x, const ControlVector& u,
                                    const AdjointState& alpha, const ModelParams& p,
                                    const ObjectiveWeights& w, double t, ObjectiveKind kind,
                                    double h) {
    require_positive_step(h, "fd_grad_state");
    return fd_grad_state(
        [&](const CompartmentState& xs) { return hamiltonian(xs, u, alpha, p, w, t, kind); },
        x, h);
}

std::array<double, 9> fd_grad_control(const CompartmentState& x, const ControlVector& u,
                                      const AdjointState& alpha, const ModelParams& p,
                                      const ObjectiveWeights& w, double t,
                                      ObjectiveKind kind, double h) {
    require_positive_step(h, "fd_grad_control");
    std::array<double, 9> g{};
    for (std::size_t j = 0; j < 9; ++j) {
        const double step = h * std::max(1.0, std::abs(u[j]));
        ControlVector lo = u, hi = u;
        lo[j] -= step;
        hi[j] += step;
        g[j] = (hamiltonian(x, hi, alpha, p, w, t, kind) -
                hamiltonian(x, lo, alpha, p, w, t, kind)) /
               (2.0 * step);
    }
    return g;
}

} // namespace epictrl
