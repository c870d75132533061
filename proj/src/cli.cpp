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
#include "epictrl/cli.hpp"

#include <atomic>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "epictrl/csv.hpp"
#include "epictrl/errors.hpp"
#include "epictrl/scenario.hpp"
#include "epictrl/solver.hpp"

namespace epictrl {

namespace {

enum class Command { Simulate, Optimize, Check, Compare };

struct Request {
    Command command = Command::Simulate;
    std::string path;
    std::filesystem::path out;
    ObjectiveKind kind = ObjectiveKind::Cost;
    std::optional<ControlVector> controls; // simulate only
};

struct TaskResult {
    int code = 0;
    std::string out;
    std::string err;
};

ObjectiveKind kind_from_name(const std::string& name) {
    if (name == "effectiveness") return ObjectiveKind::Effectiveness;
    if (name == "feasibility") return ObjectiveKind::Feasibility;
    return ObjectiveKind::Cost;
}

bool write_file(const std::filesystem::path& path, const std::string& content,
                std::ostream& err) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        err << "cannot write " << path.string() << "\n";
        return false;
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
        err << "short write to " << path.string() << "\n";
        return false;
    }
    return true;
}

// Flow of new exposures leaving S, shared by the averted-infections tally.
double exposure_inflow(const CompartmentState& x, const ControlVector& u,
                       const ModelParams& p) {
    const double gate = 1.0 - u[0] + u[1] - u[2] - u[3] - u[4];
    return gate * force_of_infection(x, p) * x.S / p.N;
}

double averted_infections(const Trajectory& base, const ControlSchedule& base_u,
                          const Trajectory& opt, const ControlSchedule& opt_u,
                          const ModelParams& p) {
    const std::size_t n = base.grid.n;
    const double dt = base.grid.dt();
    double sum = 0;
    for (std::size_t i = 1; i < n; ++i)
        sum += exposure_inflow(base.nodes[i], base_u.nodes[i], p) -
               exposure_inflow(opt.nodes[i], opt_u.nodes[i], p);
    const double front = exposure_inflow(base.nodes[0], base_u.nodes[0], p) -
                         exposure_inflow(opt.nodes[0], opt_u.nodes[0], p);
    const double back = exposure_inflow(base.nodes[n], base_u.nodes[n], p) -
                        exposure_inflow(opt.nodes[n], opt_u.nodes[n], p);
    return dt * (0.5 * (front + back) + sum);
}

void append_forward_warnings(const ForwardRun& run, std::vector<std::string>& warnings) {
    if (run.negative_state_nodes > 0)
        warnings.push_back("state dipped negative at " +
                           std::to_string(run.negative_state_nodes) + " nodes (first at node " +
                           std::to_string(run.first_negative_node) + ")");
    if (run.negative_factor_nodes > 0)
        warnings.push_back("control sums exceeded 1 at " +
                           std::to_string(run.negative_factor_nodes) +
                           " nodes, turning an outflow factor negative");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, "cannot open scenario file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void run_simulate(const Request& req, const Scenario& scenario, const std::string& stem,
                  std::ostream& out) {
    const TimeGrid grid = scenario.grid();
    Solution sol;
    std::vector<std::string> warnings;
    if (req.controls) {
        for (std::size_t j = 0; j < 9; ++j) {
            const double v = (*req.controls)[j];
            if (v < 0.0 || v > scenario.bounds[j])
                throw InvalidInput("control constant u" + std::to_string(j + 1) +
                                   " lies outside [0, " + format_double(scenario.bounds[j]) +
                                   "]");
        }
        sol.controls = ControlSchedule::constant(grid, *req.controls);
        const ForwardRun run = integrate_forward(scenario, sol.controls);
        sol.states = run.trajectory;
        append_forward_warnings(run, warnings);
    } else {
        const ForwardRun run = integrate_forward_uncontrolled(scenario);
        sol.states = run.trajectory;
        sol.controls = ControlSchedule::zeros(grid);
        append_forward_warnings(run, warnings);
    }
    sol.adjoints =
        AdjointTrajectory{grid, std::vector<AdjointState>(grid.nodes(), AdjointState{})};

    const std::filesystem::path csv_path = req.out / (stem + ".csv");
    const std::filesystem::path json_path = req.out / (stem + ".summary.json");
    std::ostringstream sink;
    if (!write_file(csv_path, write_trajectory_csv(sol), sink))
        throw ParseError(csv_path.string(), "cannot write output");

    double peak_h = 0, peak_is = 0;
    for (const CompartmentState& x : sol.states.nodes) {
        peak_h = std::max(peak_h, x.H);
        peak_is = std::max(peak_is, x.Is);
    }
    nlohmann::json doc;
    doc["command"] = "simulate";
    doc["controlled"] = req.controls.has_value();
    doc["deaths"] = sol.states.nodes.back().D;
    doc["peak_h"] = peak_h;
    doc["peak_is"] = peak_is;
    doc["warnings"] = warnings;
    if (!write_file(json_path, doc.dump(2) + "\n", sink))
        throw ParseError(json_path.string(), "cannot write output");

    out << stem << ": simulated " << grid.n << " steps over " << format_double(grid.T)
        << " days, final deaths " << format_double(sol.states.nodes.back().D) << "\n";
    for (const std::string& w : warnings) out << "  warning: " << w << "\n";
    out << "  wrote " << csv_path.string() << " and " << json_path.string() << "\n";
}

int run_optimize(const Request& req, const Scenario& scenario, const std::string& stem,
                 std::ostream& out) {
    const Solution sol = forward_backward_sweep(scenario, req.kind);
    const RunSummary summary = summarize(sol, req.kind);

    const std::filesystem::path csv_path = req.out / (stem + ".csv");
    const std::filesystem::path json_path = req.out / (stem + ".summary.json");
    std::ostringstream sink;
    if (!write_file(csv_path, write_trajectory_csv(sol), sink))
        throw ParseError(csv_path.string(), "cannot write output");
    if (!write_file(json_path, write_summary_json(summary), sink))
        throw ParseError(json_path.string(), "cannot write output");

    out << stem << ": " << objective_name(req.kind) << " objective "
        << format_double(summary.value) << " after " << summary.iterations << " sweeps ("
        << (summary.converged ? "converged" : "not converged") << ")\n";
    for (const std::string& w : summary.warnings) out << "  warning: " << w << "\n";
    out << "  wrote " << csv_path.string() << " and " << json_path.string() << "\n";
    return summary.converged ? 0 : 2;
}

void run_check(const Request& req, const Scenario& scenario, const std::string& stem,
               std::ostream& out) {
    const ExistenceReport report = check_existence(scenario, req.kind, 1000, default_seed());
    out << stem << ": existence conditions, " << objective_name(req.kind) << " objective\n";
    out << "  admissible control box closed, convex, bounded: "
        << (report.control_set_ok ? "yes" : "no") << "\n";
    out << "  dynamics growth constants: drift " << format_double(report.bound_f1)
        << ", control coupling " << format_double(report.bound_f2) << "\n";
    out << "  running-cost convexity samples passed: " << report.convexity_samples_passed
        << "/" << report.convexity_samples_total << "\n";
    out << "  effort coercivity constant: " << format_double(report.coercivity_a0) << "\n";
    for (const std::string& w : report.warnings) out << "  warning: " << w << "\n";
    out << "  verdict: " << (report.all_passed() ? "satisfied" : "NOT satisfied") << "\n";
}

int run_compare(const Request& req, const Scenario& scenario, const std::string& stem,
                std::ostream& out) {
    const Solution opt = forward_backward_sweep(scenario, req.kind);
    const TimeGrid grid = scenario.grid();
    Solution base;
    base.controls = ControlSchedule::zeros(grid);
    const ForwardRun base_run = integrate_forward(scenario, base.controls);
    base.states = base_run.trajectory;
    base.adjoints = integrate_backward(scenario, base.states, base.controls, req.kind);
    base.objective =
        evaluate_objective(base.states, base.controls, scenario.weights, req.kind);
    base.converged = true;

    const std::filesystem::path opt_csv = req.out / (stem + ".optimized.csv");
    const std::filesystem::path base_csv = req.out / (stem + ".baseline.csv");
    const std::filesystem::path json_path = req.out / (stem + ".compare.json");
    std::ostringstream sink;
    if (!write_file(opt_csv, write_trajectory_csv(opt), sink))
        throw ParseError(opt_csv.string(), "cannot write output");
    if (!write_file(base_csv, write_trajectory_csv(base), sink))
        throw ParseError(base_csv.string(), "cannot write output");

    const RunSummary opt_summary = summarize(opt, req.kind);
    const RunSummary base_summary = summarize(base, req.kind);
    const double deaths_averted = base_summary.deaths - opt_summary.deaths;
    const double infections =
        averted_infections(base.states, base.controls, opt.states, opt.controls,
                           scenario.params);

    nlohmann::json doc;
    doc["kind"] = objective_name(req.kind);
    nlohmann::json& o = doc["optimized"];
    o["value"] = opt_summary.value;
    o["iterations"] = opt_summary.iterations;
    o["converged"] = opt_summary.converged;
    o["deaths"] = opt_summary.deaths;
    o["peak_h"] = opt_summary.peak_h;
    o["peak_is"] = opt_summary.peak_is;
    o["warnings"] = opt_summary.warnings;
    nlohmann::json& b = doc["baseline"];
    b["value"] = base_summary.value;
    b["deaths"] = base_summary.deaths;
    b["peak_h"] = base_summary.peak_h;
    b["peak_is"] = base_summary.peak_is;
    doc["deaths_averted"] = deaths_averted;
    doc["infections_averted"] = infections;
    if (!write_file(json_path, doc.dump(2) + "\n", sink))
        throw ParseError(json_path.string(), "cannot write output");

    out << stem << ": deaths averted " << format_double(deaths_averted)
        << ", exposures averted " << format_double(infections) << " ("
        << objective_name(req.kind) << ")\n";
    for (const std::string& w : opt_summary.warnings) out << "  warning: " << w << "\n";
    out << "  wrote " << opt_csv.string() << ", " << base_csv.string() << ", and "
        << json_path.string() << "\n";
    return opt_summary.converged ? 0 : 2;
}

TaskResult run_one(const Request& req) {
    TaskResult result;
    std::ostringstream out;
    std::ostringstream err;
    try {
        const Scenario scenario = parse_scenario(read_text_file(req.path));
        std::error_code ec;
        std::filesystem::create_directories(req.out, ec);
        const std::string stem = std::filesystem::path(req.path).stem().string();
        switch (req.command) {
        case Command::Simulate: run_simulate(req, scenario, stem, out); break;
        case Command::Optimize: result.code = run_optimize(req, scenario, stem, out); break;
        case Command::Check: run_check(req, scenario, stem, out); break;
        case Command::Compare: result.code = run_compare(req, scenario, stem, out); break;
        }
    } catch (const DivergenceError& e) {
        err << req.path << ": " << e.what() << "\n";
        result.code = 3;
    } catch (const ParseError& e) {
        err << req.path << ": " << e.what() << "\n";
        result.code = 1;
    } catch (const std::exception& e) {
        err << req.path << ": " << e.what() << "\n";
        result.code = 1;
    }
    result.out = out.str();
    result.err = err.str();
    return result;
}

std::optional<ControlVector> parse_controls(const std::string& text, std::string& error) {
    if (text.empty()) return std::nullopt;
    ControlVector u{};
    std::size_t count = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        if (count >= 9) {
            error = "--controls takes exactly 9 comma-separated values";
            return std::nullopt;
        }
        const char* first = text.data() + pos;
        const char* last = text.data() + comma;
        const auto [ptr, ec] = std::from_chars(first, last, u[count]);
        if (ec != std::errc{} || ptr != last) {
            error = "--controls: malformed number '" + text.substr(pos, comma - pos) + "'";
            return std::nullopt;
        }
        ++count;
        pos = comma + 1;
    }
    if (count != 9) {
        error = "--controls takes exactly 9 comma-separated values";
        return std::nullopt;
    }
    return u;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Optimal intervention schedules for a seven-compartment epidemic model"};
    app.name("epictrl");
    app.require_subcommand(1);

    std::vector<std::string> scenarios;
    std::string out_dir = ".";
    std::string objective = "cost";
    unsigned jobs = 1;
    std::string controls_text;

    const auto add_common = [&](CLI::App* cmd, bool with_objective) {
        cmd->add_option("--scenario", scenarios, "scenario JSON file (repeatable)")
            ->required();
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--jobs", jobs, "worker threads for a batch of scenarios")
            ->check(CLI::PositiveNumber);
        if (with_objective)
            cmd->add_option("--objective", objective,
                            "objective kind: cost, effectiveness, or feasibility")
                ->check(CLI::IsMember({"cost", "effectiveness", "feasibility"}));
    };

    CLI::App* simulate =
        app.add_subcommand("simulate", "integrate a scenario under a fixed schedule");
    add_common(simulate, false);
    simulate->add_option("--controls", controls_text,
                         "nine comma-separated constants u1,...,u9; omitted runs the "
                         "uncontrolled system");
    CLI::App* optimize = app.add_subcommand("optimize", "run the forward-backward sweep");
    add_common(optimize, true);
    CLI::App* check = app.add_subcommand("check", "report the existence conditions");
    add_common(check, true);
    CLI::App* compare =
        app.add_subcommand("compare", "optimize, then compare with the no-control baseline");
    add_common(compare, true);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto parsed = app.get_subcommands();
        std::cout << (parsed.empty() ? app.help() : parsed.front()->help());
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "epictrl: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    Request base;
    if (simulate->parsed()) base.command = Command::Simulate;
    if (optimize->parsed()) base.command = Command::Optimize;
    if (check->parsed()) base.command = Command::Check;
    if (compare->parsed()) base.command = Command::Compare;
    base.out = out_dir;
    base.kind = kind_from_name(objective);
    if (simulate->parsed()) {
        std::string error;
        base.controls = parse_controls(controls_text, error);
        if (!error.empty()) {
            std::cerr << "epictrl: " << error << "\n";
            return 1;
        }
    }

    std::vector<Request> requests;
    requests.reserve(scenarios.size());
    for (const std::string& path : scenarios) {
        Request r = base;
        r.path = path;
        requests.push_back(std::move(r));
    }

    std::vector<TaskResult> results(requests.size());
    const std::size_t workers =
        std::min<std::size_t>(jobs == 0 ? 1 : jobs, requests.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= requests.size()) return;
            results[i] = run_one(requests[i]);
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    int code = 0;
    for (const TaskResult& r : results) {
        if (!r.out.empty()) std::cout << r.out;
        if (!r.err.empty()) std::cerr << r.err;
        code = std::max(code, r.code);
    }
    return code;
}

} // namespace epictrl
