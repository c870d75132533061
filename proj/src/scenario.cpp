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
#include "epictrl/scenario.hpp"

#include <cmath>
#include <string>

#include <json.hpp>

#include "epictrl/csv.hpp"
#include "epictrl/errors.hpp"

namespace epictrl {

namespace {

using nlohmann::json;

const json& member(const json& obj, const std::string& path, const char* key) {
    if (!obj.is_object()) throw ParseError(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(path + "." + key, "missing required key");
    return *it;
}

double number_at(const json& obj, const std::string& path, const char* key) {
    const json& v = member(obj, path, key);
    if (!v.is_number()) throw ParseError(path + "." + key, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ParseError(path + "." + key, "must be finite");
    return d;
}

double rate_at(const json& obj, const std::string& path, const char* key) {
    const double d = number_at(obj, path, key);
    if (d < 0.0 || d > 1.0)
        throw ParseError(path + "." + key, "rate must lie in [0, 1]");
    return d;
}

double nonnegative_at(const json& obj, const std::string& path, const char* key) {
    const double d = number_at(obj, path, key);
    if (d < 0.0) throw ParseError(path + "." + key, "must be nonnegative");
    return d;
}

double positive_at(const json& obj, const std::string& path, const char* key) {
    const double d = number_at(obj, path, key);
    if (!(d > 0.0)) throw ParseError(path + "." + key, "must be positive");
    return d;
}

long long integer_at(const json& obj, const std::string& path, const char* key) {
    const json& v = member(obj, path, key);
    if (!v.is_number_integer())
        throw ParseError(path + "." + key, "expected an integer");
    return v.get<long long>();
}

} // namespace

Scenario parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("$", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("$", "expected an object");

    Scenario s;

    const json& params = member(doc, "$", "params");
    s.params.tau_ei_a = rate_at(params, "params", "tau_ei_a");
    s.params.tau_ia_is = rate_at(params, "params", "tau_ia_is");
    s.params.tau_ia_r = rate_at(params, "params", "tau_ia_r");
    s.params.tau_is_r = rate_at(params, "params", "tau_is_r");
    s.params.tau_is_h = rate_at(params, "params", "tau_is_h");
    s.params.tau_is_d = rate_at(params, "params", "tau_is_d");
    s.params.tau_h_r = rate_at(params, "params", "tau_h_r");
    s.params.tau_h_d = rate_at(params, "params", "tau_h_d");
    s.params.tau_r_s = rate_at(params, "params", "tau_r_s");
    s.params.zeta_ia_s = rate_at(params, "params", "zeta_ia_s");
    s.params.zeta_is_s = rate_at(params, "params", "zeta_is_s");
    s.params.zeta_h_s = rate_at(params, "params", "zeta_h_s");
    s.params.N = positive_at(params, "params", "N");

    const json& initial = member(doc, "$", "initial");
    s.initial.S = nonnegative_at(initial, "initial", "S");
    s.initial.E = nonnegative_at(initial, "initial", "E");
    s.initial.Ia = nonnegative_at(initial, "initial", "Ia");
    s.initial.Is = nonnegative_at(initial, "initial", "Is");
    s.initial.H = nonnegative_at(initial, "initial", "H");
    s.initial.R = nonnegative_at(initial, "initial", "R");
    s.initial.D = nonnegative_at(initial, "initial", "D");
    const double sum = s.initial.S + s.initial.E + s.initial.Ia + s.initial.Is +
                       s.initial.H + s.initial.R + s.initial.D;
    if (std::abs(sum - s.params.N) > 1e-9 * s.params.N)
        throw ParseError("initial", "compartments must sum to N: expected " +
                                        format_double(s.params.N) + ", found " +
                                        format_double(sum));

    s.horizon = positive_at(doc, "$", "horizon");
    if (doc.contains("steps")) {
        const long long n = integer_at(doc, "$", "steps");
        if (n < 2) throw ParseError("$.steps", "grid needs at least 2 intervals");
        s.steps = static_cast<std::size_t>(n);
    }

    const json& weights = member(doc, "$", "weights");
    s.weights.lambda1 = nonnegative_at(weights, "weights", "lambda1");
    s.weights.lambda2 = nonnegative_at(weights, "weights", "lambda2");
    s.weights.lambda3 = nonnegative_at(weights, "weights", "lambda3");
    s.weights.lambda4 = nonnegative_at(weights, "weights", "lambda4");
    for (std::size_t i = 0; i < 9; ++i) {
        const std::string key = "b" + std::to_string(i + 1);
        s.weights.b[i] = positive_at(weights, "weights", key.c_str());
    }
    s.weights.sigma = nonnegative_at(weights, "weights", "sigma");

    if (doc.contains("bounds")) {
        const json& bounds = doc["bounds"];
        if (!bounds.is_array() || bounds.size() != 9)
            throw ParseError("bounds", "expected an array of 9 numbers");
        for (std::size_t i = 0; i < 9; ++i) {
            const std::string path = "bounds[" + std::to_string(i) + "]";
            if (!bounds[i].is_number()) throw ParseError(path, "expected a number");
            const double v = bounds[i].get<double>();
            if (!std::isfinite(v) || !(v > 0.0) || v > 1.0)
                throw ParseError(path, "control bound must lie in (0, 1]");
            s.bounds[i] = v;
        }
    }

    if (doc.contains("solver")) {
        const json& solver = doc["solver"];
        if (!solver.is_object()) throw ParseError("solver", "expected an object");
        if (solver.contains("max_iters")) {
            const long long it = integer_at(solver, "solver", "max_iters");
            if (it < 1) throw ParseError("solver.max_iters", "must be at least 1");
            s.solver.max_iters = static_cast<int>(it);
        }
        if (solver.contains("tol")) s.solver.tol = positive_at(solver, "solver", "tol");
        if (solver.contains("theta")) {
            s.solver.theta = positive_at(solver, "solver", "theta");
            if (s.solver.theta > 1.0)
                throw ParseError("solver.theta", "relaxation must lie in (0, 1]");
        }
        if (solver.contains("singular_band"))
            s.solver.singular_band = nonnegative_at(solver, "solver", "singular_band");
        if (solver.contains("discount_in_update")) {
            const json& v = solver["discount_in_update"];
            if (!v.is_boolean())
                throw ParseError("solver.discount_in_update", "expected a boolean");
            s.solver.discount_in_update = v.get<bool>();
        }
    }

    return s;
}

std::string emit_scenario(const Scenario& s) {
    json doc;
    json& params = doc["params"];
    params["tau_ei_a"] = s.params.tau_ei_a;
    params["tau_ia_is"] = s.params.tau_ia_is;
    params["tau_ia_r"] = s.params.tau_ia_r;
    params["tau_is_r"] = s.params.tau_is_r;
    params["tau_is_h"] = s.params.tau_is_h;
    params["tau_is_d"] = s.params.tau_is_d;
    params["tau_h_r"] = s.params.tau_h_r;
    params["tau_h_d"] = s.params.tau_h_d;
    params["tau_r_s"] = s.params.tau_r_s;
    params["zeta_ia_s"] = s.params.zeta_ia_s;
    params["zeta_is_s"] = s.params.zeta_is_s;
    params["zeta_h_s"] = s.params.zeta_h_s;
    params["N"] = s.params.N;
    json& initial = doc["initial"];
    initial["S"] = s.initial.S;
    initial["E"] = s.initial.E;
    initial["Ia"] = s.initial.Ia;
    initial["Is"] = s.initial.Is;
    initial["H"] = s.initial.H;
    initial["R"] = s.initial.R;
    initial["D"] = s.initial.D;
    doc["horizon"] = s.horizon;
    doc["steps"] = s.steps;
    json& weights = doc["weights"];
    weights["lambda1"] = s.weights.lambda1;
    weights["lambda2"] = s.weights.lambda2;
    weights["lambda3"] = s.weights.lambda3;
    weights["lambda4"] = s.weights.lambda4;
    for (std::size_t i = 0; i < 9; ++i)
        weights["b" + std::to_string(i + 1)] = s.weights.b[i];
    weights["sigma"] = s.weights.sigma;
    doc["bounds"] = s.bounds;
    json& solver = doc["solver"];
    solver["max_iters"] = s.solver.max_iters;
    solver["tol"] = s.solver.tol;
    solver["theta"] = s.solver.theta;
    solver["singular_band"] = s.solver.singular_band;
    solver["discount_in_update"] = s.solver.discount_in_update;
    return doc.dump(2) + "\n";
}

RunSummary summarize(const Solution& solution, ObjectiveKind kind) {
    RunSummary summary;
    summary.kind = kind;
    summary.value = solution.objective;
    summary.iterations = solution.iterations;
    summary.converged = solution.converged;
    summary.warnings = solution.warnings;
    if (!solution.states.nodes.empty()) {
        summary.deaths = solution.states.nodes.back().D;
        for (const CompartmentState& x : solution.states.nodes) {
            summary.peak_h = std::max(summary.peak_h, x.H);
            summary.peak_is = std::max(summary.peak_is, x.Is);
        }
    }
    return summary;
}

std::string write_summary_json(const RunSummary& summary) {
    json doc;
    doc["kind"] = objective_name(summary.kind);
    doc["value"] = summary.value;
    doc["iterations"] = summary.iterations;
    doc["converged"] = summary.converged;
    doc["deaths"] = summary.deaths;
    doc["peak_h"] = summary.peak_h;
    doc["peak_is"] = summary.peak_is;
    doc["warnings"] = summary.warnings;
    return doc.dump(2) + "\n";
}

} // namespace epictrl
