#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dioph/cli.hpp"
#include "dioph/driver.hpp"

using namespace dioph;

namespace {

struct CliResult {
    int code;
    std::string out, err;
};

CliResult cli(std::vector<std::string> args) {
    args.insert(args.begin(), "dioph-verify");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<CaseParams> some_cases() {
    auto all = enumerate_cases();
    std::vector<CaseParams> out;
    for (std::size_t i = 0; i < all.size(); i += 97) out.push_back(all[i]);
    for (const auto& c : all) {
        if (c.k == 8) out.push_back(c);
    }
    return out;
}

}  // namespace

TEST_CASE("verify_all passes and is independent of parallelism") {
    RunOptions serial;
    serial.jobs = 1;
    RunReport a = verify_all(serial);
    CHECK(a.verdict == Verdict::pass);
    CHECK(a.totals.cases == 1767);
    CHECK(a.totals.eliminated == 1767);
    CHECK(a.totals.chains_contradicted == 4);
    CHECK(a.totals.survivors == 0);
    CHECK(a.totals.undecidable == 0);
    CHECK(a.search.solutions.empty());

    RunOptions parallel;
    parallel.jobs = 4;
    RunReport b = verify_all(parallel);
    CHECK(without_timing(to_json(a)).dump() == without_timing(to_json(b)).dump());

    // certificate invariants
    for (const auto& c : a.cases) {
        CHECK(c.eliminated == (c.reason == CaseReason::no_admissible_j || c.reason == CaseReason::all_j_contradicted));
        std::size_t expected_J = 2;
        for (const auto& cand : c.candidates) {
            CHECK(cand.J == expected_J);
            expected_J += 2;
            CHECK(cand.q_J <= c.q_cap);
        }
    }
}

TEST_CASE("an 8-bit cap is incomplete, never a pass") {
    RunOptions options;
    options.policy = PrecisionPolicy{8, 8};
    options.cases = some_cases();
    RunReport r = verify_all(options);
    CHECK(r.verdict == Verdict::incomplete);
    bool open_chain = false;
    for (const auto& ch : r.chains) open_chain |= !ch.decided;
    CHECK(open_chain);
    CHECK(r.totals.survivors == 0);
}

TEST_CASE("a zero bound makes the run fail") {
    RunOptions options;
    options.lower_bound_override = Rational(0);
    options.cases = some_cases();
    RunReport r = verify_all(options);
    CHECK(r.verdict == Verdict::fail);
    CHECK(r.totals.survivors > 0);
}

TEST_CASE("reports round-trip through JSON") {
    RunOptions options;
    options.cases = some_cases();
    RunReport r = verify_all(options);
    auto j = to_json(r);
    RunReport back = report_from_json(nlohmann::json::parse(j.dump()));
    CHECK(to_json(back).dump() == j.dump());

    // decimal strings are exact and re-format to themselves
    for (const auto& c : r.cases) {
        for (const auto* s : {&c.lambda_lo, &c.lambda_hi}) {
            CHECK(format_decimal(parse_decimal(*s), kDecimalDigits, Rounding::down) == *s);
            CHECK(format_decimal(parse_decimal(*s), kDecimalDigits, Rounding::up) == *s);
        }
        CHECK(parse_decimal(c.lambda_lo) <= parse_decimal(c.lambda_hi));
    }
    for (const auto& ch : r.chains) {
        CHECK(parse_decimal(ch.lhs.lo) > parse_decimal(ch.rhs.hi));
    }
}

TEST_CASE("resume re-verifies only missing cases") {
    RunOptions options;
    options.cases = some_cases();
    RunReport full = verify_all(options);

    RunReport partial = report_from_json(nlohmann::json::parse(to_json(full).dump()));
    partial.cases.resize(partial.cases.size() / 2);
    // mark reused certificates so reuse is observable
    for (auto& c : partial.cases) c.wall_time_seconds = -1.0;

    RunOptions again = options;
    again.resume = &partial;
    RunReport resumed = verify_all(again);
    CHECK(without_timing(to_json(resumed)).dump() == without_timing(to_json(full)).dump());
    std::size_t reused = 0;
    for (const auto& c : resumed.cases) reused += c.wall_time_seconds == -1.0;
    CHECK(reused == partial.cases.size());

    // different parameters invalidate the earlier report
    RunOptions other = again;
    other.policy.cap_bits = 2048;
    RunReport fresh = verify_all(other);
    for (const auto& c : fresh.cases) CHECK(c.wall_time_seconds >= 0.0);
}

TEST_CASE("VERIFIER_JOBS overrides the requested worker count") {
    ::setenv("VERIFIER_JOBS", "3", 1);
    CHECK(effective_jobs(1) == 3);
    ::setenv("VERIFIER_JOBS", "junk", 1);
    CHECK(effective_jobs(5) == 5);
    ::unsetenv("VERIFIER_JOBS");
    CHECK(effective_jobs(0) == 1);
}

TEST_CASE("cli exit codes") {
    auto one = cli({"verify-case", "--k", "8", "--a", "3", "--c", "1", "--x", "2"});
    CHECK(one.code == 0);
    auto cert = nlohmann::json::parse(one.out);
    CHECK(cert["eliminated"] == true);
    CHECK(cert["N"] == "2303");

    CHECK(cli({"verify-case", "--k", "8", "--a", "1", "--c", "1", "--x", "3"}).code == 3);  // not in S
    CHECK(cli({"verify-case", "--k", "8"}).code == 3);
    CHECK(cli({"no-such-command"}).code == 3);
    CHECK(cli({}).code == 3);

    auto dec = cli({"decompose", "12", "27"});
    CHECK(dec.code == 0);
    CHECK(dec.out == "u=3 v=2 w=3\n");
    auto bad = cli({"decompose", "2", "3"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("not a square") != std::string::npos);
    CHECK(cli({"decompose", "x", "3"}).code == 3);

    CHECK(cli({"enumerate", "--count-only"}).out == "1767\n");
    CHECK(cli({"chains"}).code == 0);
    CHECK(cli({"chains", "--precision-cap", "8"}).code == 2);

    CHECK(cli({"search"}).code == 0);
    CHECK(cli({"search", "--k-min", "4"}).code == 3);
    CHECK(cli({"search", "--k-min", "4", "--k-max", "5", "--explore"}).code == 0);
    auto eq = cli({"search", "--k-max", "7", "--max-abc", "1", "--max-xyz", "2", "--allow-equal"});
    CHECK(eq.code == 0);
    CHECK(eq.out.find("1 solution(s)") != std::string::npos);

    CHECK(cli({"--version"}).code == 0);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("cli verify-all writes a report") {
    std::string path = "test_driver_report.json";
    auto r = cli({"verify-all", "--out", path, "--jobs", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("verdict: PASS") != std::string::npos);
    std::ifstream in(path);
    auto j = nlohmann::json::parse(in);
    CHECK(j["verdict"] == "PASS");
    CHECK(j["cases"].size() == 1767);
    auto resumed = cli({"verify-all", "--resume", path, "--out", path + ".2"});
    CHECK(resumed.code == 0);

    CHECK(cli({"verify-all", "--resume", "/nonexistent/report.json"}).code == 3);
    CHECK(cli({"verify-all", "--lower-bound-override", "abc"}).code == 3);
    std::remove(path.c_str());
    std::remove((path + ".2").c_str());
}

TEST_CASE("report keys are in a fixed order") {
    RunOptions options;
    options.cases = {CaseParams{7, 1, 1, 2}};
    auto j = to_json(verify_all(options));
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"version", "params", "chains", "cases", "search", "totals", "verdict",
                                           "wall_time_seconds"});
    std::vector<std::string> case_keys;
    for (auto it = j["cases"][0].begin(); it != j["cases"][0].end(); ++it) case_keys.push_back(it.key());
    CHECK(case_keys == std::vector<std::string>{"case", "N", "lambda", "q_cap", "candidates", "eliminated", "reason",
                                                "precision_bits", "wall_time_seconds", "note"});
}
