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

#include <charconv>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "epictrl/cli.hpp"
#include "epictrl/csv.hpp"
#include "epictrl/errors.hpp"
#include "epictrl/scenario.hpp"
#include "epictrl/solver.hpp"
#include "support.hpp"

using namespace epictrl;
using namespace testsupport;

namespace {

std::string replace_once(std::string text, const std::string& from, const std::string& to) {
    const std::size_t at = text.find(from);
    REQUIRE(at != std::string::npos);
    return text.replace(at, from.size(), to);
}

struct CapturedCli {
    int code = 0;
    std::string out;
    std::string err;
};

CapturedCli run_captured(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    std::streambuf* old_out = std::cout.rdbuf(out.rdbuf());
    std::streambuf* old_err = std::cerr.rdbuf(err.rdbuf());
    CapturedCli r;
    try {
        r.code = run_cli(args);
    } catch (...) {
        std::cout.rdbuf(old_out);
        std::cerr.rdbuf(old_err);
        throw;
    }
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::filesystem::path fresh_dir(const std::string& tag) {
    const auto dir = std::filesystem::temp_directory_path() / ("epictrl_io_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string scenario_path(const char* name) {
    return std::string(EPICTRL_SCENARIO_DIR) + "/" + name;
}

std::string fixture_path(const char* name) {
    return std::string(EPICTRL_TEST_DATA_DIR) + "/" + name;
}

} // namespace

TEST_CASE("a complete document parses with its optional blocks applied") {
    const Scenario s = parse_scenario(read_file(scenario_path("reference.json")));
    CHECK(s.params.tau_ei_a == 0.25);
    CHECK(s.params.N == 100000.0);
    CHECK(s.initial.S == 98000.0);
    CHECK(s.horizon == 90.0);
    CHECK(s.steps == 2000);
    CHECK(s.weights.lambda4 == 5.0);
    CHECK(s.weights.b[1] == 4.0);
    CHECK(s.weights.sigma == 0.05);
    CHECK(s.bounds[0] == 0.5);
    CHECK(s.bounds[8] == 0.8);
    CHECK(s.solver.max_iters == 500);
    CHECK(s.solver.tol == 1e-4);
    CHECK(s.solver.theta == 0.5);
    CHECK(s.solver.singular_band == 1e-9);
    CHECK(s.solver.discount_in_update);
}

TEST_CASE("omitted optional blocks fall back to the documented defaults") {
    const Scenario s = parse_scenario(fixture_text("minimal.json"));
    for (double b : s.bounds) CHECK(b == 1.0);
    CHECK(s.solver == SweepOptions{});
    const std::string text = replace_once(fixture_text("minimal.json"), "\"steps\": 40,", "");
    CHECK(parse_scenario(text).steps == 1000);
}

TEST_CASE("a negative rate is rejected with its field path") {
    try {
        parse_scenario(fixture_text("bad_negative_rate.json"));
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.field == "params.tau_h_d");
        CHECK(std::string(e.what()).find("[0, 1]") != std::string::npos);
    }
}

TEST_CASE("a population mismatch reports both numbers") {
    try {
        parse_scenario(fixture_text("bad_sum.json"));
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.field == "initial");
        CHECK(std::string(e.what()).find("expected 99, found 100") != std::string::npos);
    }
}

TEST_CASE("malformed syntax, missing keys, and bad shapes name the culprit") {
    CHECK_THROWS_AS(parse_scenario("{"), ParseError);
    const std::string base = fixture_text("minimal.json");
    try {
        parse_scenario(replace_once(base, "\"lambda1\"", "\"lambda_one\""));
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.field == "weights.lambda1");
    }
    CHECK_THROWS_AS(parse_scenario(replace_once(base, "\"steps\": 40", "\"steps\": 1")),
                    ParseError);
    CHECK_THROWS_AS(parse_scenario(replace_once(base, "\"steps\": 40", "\"steps\": 40.5")),
                    ParseError);
    CHECK_THROWS_AS(
        parse_scenario(replace_once(base, "\"horizon\": 20", "\"horizon\": 0")),
        ParseError);
    const std::string with_bounds =
        replace_once(base, "\"horizon\": 20,", "\"horizon\": 20, \"bounds\": [0.5, 0.5],");
    CHECK_THROWS_AS(parse_scenario(with_bounds), ParseError);
    const std::string bad_theta = replace_once(
        base, "\"horizon\": 20,", "\"horizon\": 20, \"solver\": {\"theta\": 1.5},");
    CHECK_THROWS_AS(parse_scenario(bad_theta), ParseError);
}

TEST_CASE("emit and parse are mutually inverse") {
    Scenario s = parse_scenario(read_file(scenario_path("reference.json")));
    CHECK(parse_scenario(emit_scenario(s)) == s);
    s.solver.discount_in_update = false;
    s.solver.tol = 3.25e-5;
    s.bounds[4] = 0.125;
    CHECK(parse_scenario(emit_scenario(s)) == s);
    const Scenario m = parse_scenario(fixture_text("minimal.json"));
    CHECK(parse_scenario(emit_scenario(m)) == m);
}

TEST_CASE("trajectory tables survive a write/read cycle bit for bit") {
    const Scenario s = parse_scenario(fixture_text("minimal.json"));
    const Solution sol = forward_backward_sweep(s, ObjectiveKind::Cost);
    const std::string text = write_trajectory_csv(sol);
    CHECK(text.substr(0, 2) == "t,");
    CHECK(text.find("alpha7\n") != std::string::npos);
    CHECK(text.find("\r") == std::string::npos);
    const Solution back = read_trajectory_csv(text);
    CHECK(back.states == sol.states);
    CHECK(back.controls == sol.controls);
    CHECK(back.adjoints == sol.adjoints);
}

TEST_CASE("shortest decimal forms parse back to identical bits") {
    const double values[] = {0.1,     1.0 / 3.0, 1e-300, 123456789.123456789,
                             -0.0,    5e-324,    1.0,    90.0,
                             2.5e-10, -17.125};
    for (const double v : values) {
        const std::string text = format_double(v);
        double round = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), round);
        CHECK(ec == std::errc{});
        CHECK(ptr == text.data() + text.size());
        std::uint64_t a, b;
        std::memcpy(&a, &v, sizeof a);
        std::memcpy(&b, &round, sizeof b);
        CHECK(a == b);
    }
}

TEST_CASE("summaries serialize every reported field") {
    const Scenario s = parse_scenario(fixture_text("minimal.json"));
    const Solution sol = forward_backward_sweep(s, ObjectiveKind::Cost);
    const RunSummary summary = summarize(sol, ObjectiveKind::Cost);
    const std::string a = write_summary_json(summary);
    CHECK(a == write_summary_json(summary));
    for (const char* key :
         {"\"kind\"", "\"value\"", "\"iterations\"", "\"converged\"", "\"deaths\"",
          "\"peak_h\"", "\"peak_is\"", "\"warnings\""})
        CHECK(a.find(key) != std::string::npos);
    CHECK(a.find("\"cost\"") != std::string::npos);
    CHECK(summary.peak_is >= sol.states.nodes.back().Is);
}

TEST_CASE("command line help and usage errors exit as documented") {
    CHECK(run_captured({"--help"}).code == 0);
    CHECK(run_captured({"simulate", "--help"}).code == 0);
    const CapturedCli unknown =
        run_captured({"optimize", "--scenario", "x.json", "--frobnicate"});
    CHECK(unknown.code == 1);
    CHECK(unknown.err.find("Usage") != std::string::npos);
    CHECK(run_captured({}).code == 1);
    const CapturedCli bad_kind = run_captured(
        {"optimize", "--scenario", "x.json", "--objective", "speed"});
    CHECK(bad_kind.code == 1);
}

TEST_CASE("command line maps failure classes onto exit codes") {
    const CapturedCli missing = run_captured(
        {"optimize", "--scenario", "/nonexistent/nowhere.json"});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("cannot open") != std::string::npos);
    const CapturedCli invalid =
        run_captured({"optimize", "--scenario", fixture_path("bad_sum.json")});
    CHECK(invalid.code == 1);
    CHECK(invalid.err.find("expected 99, found 100") != std::string::npos);

    const auto dir = fresh_dir("diverge");
    Scenario s = parse_scenario(fixture_text("minimal.json"));
    s.horizon = 1e300;
    s.steps = 2;
    std::ofstream((dir / "explode.json").string(), std::ios::binary)
        << emit_scenario(s);
    const CapturedCli diverged = run_captured(
        {"optimize", "--scenario", (dir / "explode.json").string(), "--out", dir.string()});
    CHECK(diverged.code == 3);
}

TEST_CASE("simulate writes the table and summary where asked") {
    const auto dir = fresh_dir("simulate");
    const CapturedCli r = run_captured({"simulate", "--scenario",
                                        fixture_path("minimal.json"), "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(std::filesystem::exists(dir / "minimal.csv"));
    CHECK(std::filesystem::exists(dir / "minimal.summary.json"));
    const std::string summary = read_file((dir / "minimal.summary.json").string());
    CHECK(summary.find("\"controlled\": false") != std::string::npos);

    const CapturedCli fixed = run_captured(
        {"simulate", "--scenario", fixture_path("minimal.json"), "--out", dir.string(),
         "--controls", "0.1,0.05,0.1,0.1,0.1,0.2,0.1,0.1,0.3"});
    CHECK(fixed.code == 0);
    const CapturedCli out_of_box = run_captured(
        {"simulate", "--scenario", fixture_path("minimal.json"), "--out", dir.string(),
         "--controls", "2,0,0,0,0,0,0,0,0"});
    CHECK(out_of_box.code == 1);
    const CapturedCli short_list = run_captured(
        {"simulate", "--scenario", fixture_path("minimal.json"), "--out", dir.string(),
         "--controls", "0.1,0.2"});
    CHECK(short_list.code == 1);
}

TEST_CASE("optimize and compare emit their documented artifacts") {
    const auto dir = fresh_dir("optimize");
    const CapturedCli opt = run_captured({"optimize", "--scenario",
                                          scenario_path("reference.json"), "--out",
                                          dir.string(), "--objective", "effectiveness"});
    CHECK(opt.code == 0);
    CHECK(std::filesystem::exists(dir / "reference.csv"));
    const std::string summary = read_file((dir / "reference.summary.json").string());
    CHECK(summary.find("\"effectiveness\"") != std::string::npos);

    const CapturedCli cmp = run_captured({"compare", "--scenario",
                                          scenario_path("reference.json"), "--out",
                                          dir.string()});
    CHECK(cmp.code == 0);
    CHECK(std::filesystem::exists(dir / "reference.optimized.csv"));
    CHECK(std::filesystem::exists(dir / "reference.baseline.csv"));
    const std::string compare = read_file((dir / "reference.compare.json").string());
    CHECK(compare.find("\"deaths_averted\"") != std::string::npos);

    const CapturedCli chk = run_captured(
        {"check", "--scenario", scenario_path("reference.json")});
    CHECK(chk.code == 0);
    CHECK(chk.out.find("verdict: satisfied") != std::string::npos);
}

TEST_CASE("a batch fans out over workers and keeps stdout in input order") {
    const auto dir = fresh_dir("batch");
    const CapturedCli r = run_captured(
        {"simulate", "--scenario", fixture_path("minimal.json"), "--scenario",
         scenario_path("no_outbreak.json"), "--out", dir.string(), "--jobs", "2"});
    CHECK(r.code == 0);
    CHECK(std::filesystem::exists(dir / "minimal.csv"));
    CHECK(std::filesystem::exists(dir / "no_outbreak.csv"));
    CHECK(r.out.find("minimal") < r.out.find("no_outbreak"));
}
