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
#include "epictrl/objectives.hpp"

#include <cmath>
#include <cstdlib>
#include <random>

#include "epictrl/errors.hpp"
#include "epictrl/scenario.hpp"

namespace epictrl {

namespace {

void require_finite_weights(const ObjectiveWeights& w, const char* who) {
    double fields[] = {w.lambda1, w.lambda2, w.lambda3, w.lambda4, w.sigma};
    for (double v : fields)
        if (!std::isfinite(v)) throw InvalidInput(std::string(who) + ": non-finite weight");
    for (double v : w.b)
        if (!std::isfinite(v)) throw InvalidInput(std::string(who) + ": non-finite cost factor");
}

void require_finite_controls(const ControlVector& u, const char* who) {
    for (double v : u)
        if (!std::isfinite(v)) throw InvalidInput(std::string(who) + ": non-finite control");
}

void require_finite_state(const CompartmentState& x, const char* who) {
    for (double v : x.as_array())
        if (!std::isfinite(v)) throw InvalidInput(std::string(who) + ": non-finite state");
}

} // namespace

const char* objective_name(ObjectiveKind kind) {
    switch (kind) {
    case ObjectiveKind::Cost: return "cost";
    case ObjectiveKind::Effectiveness: return "effectiveness";
    default: return "feasibility";
    }
}

double lagrangian_cost(const CompartmentState& x, const ControlVector& u,
                       const ObjectiveWeights& w) {
    require_finite_state(x, "lagrangian_cost");
    require_finite_controls(u, "lagrangian_cost");
    require_finite_weights(w, "lagrangian_cost");
    double effort = 0;
    for (std::size_t i = 0; i < 9; ++i) effort += w.b[i] * u[i] * u[i];
    return w.lambda1 * x.E + w.lambda2 * x.Ia + w.lambda3 * x.Is + w.lambda4 * x.H +
           0.5 * effort;
}

double lagrangian_effectiveness(const CompartmentState& x, const ControlVector& u,
                                const ObjectiveWeights& w, double t) {
    require_finite_state(x, "lagrangian_effectiveness");
    require_finite_controls(u, "lagrangian_effectiveness");
    require_finite_weights(w, "lagrangian_effectiveness");
    if (!std::isfinite(t)) throw InvalidInput("lagrangian_effectiveness: non-finite time");
    const double reach = (w.b[0] * u[0] + w.b[1] * u[1]) * x.S +
                         (w.b[2] * u[2] + w.b[3] * u[3] + w.b[4] * u[4]) * (x.S + x.R) +
                         w.b[5] * u[5] * (x.E + x.Ia) +
                         (w.b[6] * u[6] + w.b[7] * u[7]) * x.Is + w.b[8] * u[8] * x.H;
    return reach * std::exp(-w.sigma * t);
}

double lagrangian_feasibility(const CompartmentState& x, const ControlVector& u,
                              const ObjectiveWeights& w, double t) {
    if (!std::isfinite(t)) throw InvalidInput("lagrangian_feasibility: non-finite time");
    return lagrangian_cost(x, u, w) * std::exp(-w.sigma * t);
}

double lagrangian(ObjectiveKind kind, const CompartmentState& x, const ControlVector& u,
                  const ObjectiveWeights& w, double t) {
    switch (kind) {
    case ObjectiveKind::Cost: return lagrangian_cost(x, u, w);
    case ObjectiveKind::Effectiveness: return lagrangian_effectiveness(x, u, w, t);
    default: return lagrangian_feasibility(x, u, w, t);
    }
}

double evaluate_objective(const Trajectory& states, const ControlSchedule& controls,
                          const ObjectiveWeights& w, ObjectiveKind kind, ExecPolicy policy) {
    if (!(states.grid == controls.grid) || states.nodes.size() != states.grid.nodes() ||
        controls.nodes.size() != controls.grid.nodes())
        throw ShapeError("evaluate_objective: trajectory and schedule grids differ");
    const TimeGrid& g = states.grid;
    std::vector<double> integrand(g.nodes());
    for_each_index(g.nodes(), policy, [&](std::size_t i) {
        integrand[i] = lagrangian(kind, states.nodes[i], controls.nodes[i], w, g.time(i));
    });
    // Serial reduction in index order regardless of policy.
    double interior = 0;
    for (std::size_t i = 1; i + 1 < g.nodes(); ++i) interior += integrand[i];
    return g.dt() * (0.5 * (integrand.front() + integrand.back()) + interior);
}

unsigned default_seed() {
    if (const char* env = std::getenv("EPICTRL_SEED")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0') return static_cast<unsigned>(v);
    }
    return 42;
}

ExistenceReport check_existence(const Scenario& scenario, ObjectiveKind kind,
                                int convexity_samples, unsigned seed, ExecPolicy policy) {
    ExistenceReport report;
    report.convexity_samples_total = convexity_samples;

    // (i) the admissible set is a product of closed intervals [0, bound_i];
    // closedness, convexity, and boundedness only need the bounds to be sane.
    report.control_set_ok = true;
    for (double bound : scenario.bounds)
        if (!(bound > 0.0) || !(bound <= 1.0) || !std::isfinite(bound))
            report.control_set_ok = false;

    // (ii) linear growth of the decomposed dynamics.
    const NormBounds nb = norm_bounds(scenario.params);
    report.bound_f1 = nb.bound_f1;
    report.bound_f2 = nb.bound_f2;

    // (iii) convexity of the running cost in u, sampled on random
    // (state, v, w, blend) tuples.  The effectiveness Lagrangian is affine, so
    // its gap sits at rounding level; the quadratic ones must be <= 0.
    struct Sample {
        CompartmentState x;
        ControlVector v, w;
        double a, t;
    };
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Sample> samples(static_cast<std::size_t>(convexity_samples));
    for (Sample& s : samples) {
        std::array<double, 7> comps;
        for (double& c : comps) c = unit(rng) * scenario.params.N;
        s.x = CompartmentState::from_array(comps);
        for (std::size_t i = 0; i < 9; ++i) s.v[i] = unit(rng) * scenario.bounds[i];
        for (std::size_t i = 0; i < 9; ++i) s.w[i] = unit(rng) * scenario.bounds[i];
        s.a = unit(rng);
        s.t = unit(rng) * scenario.horizon;
    }
    std::vector<char> ok(samples.size());
    for_each_index(samples.size(), policy, [&](std::size_t i) {
        const Sample& s = samples[i];
        ControlVector mid;
        for (std::size_t j = 0; j < 9; ++j) mid[j] = s.a * s.v[j] + (1.0 - s.a) * s.w[j];
        const double lv = lagrangian(kind, s.x, s.v, scenario.weights, s.t);
        const double lw = lagrangian(kind, s.x, s.w, scenario.weights, s.t);
        const double lm = lagrangian(kind, s.x, mid, scenario.weights, s.t);
        const double gap = lm - (s.a * lv + (1.0 - s.a) * lw);
        const double slack = 1e-9 * std::max(1.0, std::abs(lv) + std::abs(lw));
        ok[i] = gap <= slack ? 1 : 0;
    });
    int passed = 0;
    for (char c : ok) passed += c;
    report.convexity_samples_passed = passed;

    // (iv) coercivity of the quadratic effort term.
    double min_b = scenario.weights.b[0];
    for (double b : scenario.weights.b) min_b = std::min(min_b, b);
    report.coercivity_a0 = 0.5 * min_b;
    if (min_b < 2e-8)
        report.warnings.push_back(
            "ill-conditioned control weights: min b_i below 2e-8 makes the "
            "stationary-control divisions unstable");

    // The model keeps the raw (1 - sum u) gate factors; warn when the bounds
    // admit negative ones.
    const auto& ub = scenario.bounds;
    if (ub[0] + ub[2] + ub[3] + ub[4] > 1.0)
        report.warnings.push_back(
            "bounds on u1, u3, u4, u5 sum past 1: the exposure factor can go negative");
    if (ub[6] + ub[7] > 1.0)
        report.warnings.push_back(
            "bounds on u7, u8 sum past 1: the symptomatic outflow factor can go negative");
    if (ub[2] + ub[3] + ub[4] > 1.0)
        report.warnings.push_back(
            "bounds on u3, u4, u5 sum past 1: the immunity-loss factor can go negative");
    return report;
}

} // namespace epictrl
