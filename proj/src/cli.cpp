#include "dioph/cli.hpp"

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "dioph/driver.hpp"

namespace dioph {

namespace {

constexpr int kUsage = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

PrecisionPolicy policy_from(unsigned start, unsigned cap) {
    if (cap == 0) throw UsageError("--precision-cap must be positive");
    return PrecisionPolicy{std::min(start, cap), cap};
}

void write_json(const nlohmann::ordered_json& j, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << j.dump(2) << '\n';
        return;
    }
    std::ofstream file(path);
    if (!file) throw UsageError("cannot open '" + path + "' for writing");
    file << j.dump(2) << '\n';
}

void print_summary(const RunReport& r, std::ostream& out) {
    for (const auto& ch : r.chains) {
        out << "chain k=" << ch.k << " D>=" << ch.d_threshold << ": lhs >= " << ch.lhs.lo << ", rhs <= " << ch.rhs.hi
            << (ch.contradiction ? "  contradiction" : ch.decided ? "  NOT contradicted" : "  undecided") << " ("
            << ch.precision_bits << " bits)\n";
    }
    const auto& t = r.totals;
    out << "cases: " << t.cases << ", eliminated " << t.eliminated << " (no admissible J " << t.no_admissible_j
        << ", all J contradicted " << t.all_j_contradicted << "), survivors " << t.survivors << ", undecidable "
        << t.undecidable << ", candidates examined " << t.candidates_examined << '\n';
    out << "search solutions: " << t.search_solutions << '\n';
    out << "verdict: " << to_string(r.verdict) << '\n';
}

int case_exit(const CaseCertificate& c) {
    if (c.eliminated) return 0;
    return c.reason == CaseReason::survivor ? 1 : 2;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certified verification that (a^2 c x^k - 1)(b^2 c y^k - 1) = (a b c z^k - 1)^2 has no solutions "
                 "with x, y, z > 1, k >= 7 and a^2 x^k != b^2 y^k.",
                 "dioph-verify"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    unsigned start = 128, cap = 4096, jobs = 1;
    std::string out_path, resume_path, override_text;

    auto* all = app.add_subcommand("verify-all", "Chains, every case of S and the direct search");
    all->add_option("--precision-cap", cap, "Largest working precision in bits")->capture_default_str();
    all->add_option("--precision-start", start, "Initial working precision in bits")->capture_default_str();
    all->add_option("--jobs", jobs, "Worker threads (VERIFIER_JOBS overrides)")->capture_default_str();
    all->add_option("--out", out_path, "Write the JSON report here");
    all->add_option("--resume", resume_path, "Reuse decided certificates from an earlier report");
    all->add_option("--lower-bound-override", override_text,
                    "Replace the a_{J+1} bound by this rational (for testing the checker)");

    unsigned long ck = 0, ca = 0, cc = 0, cx = 0;
    auto* one = app.add_subcommand("verify-case", "Eliminate one case (k, a, c, x)");
    one->add_option("--k", ck)->required();
    one->add_option("--a", ca)->required();
    one->add_option("--c", cc)->required();
    one->add_option("--x", cx)->required();
    one->add_option("--precision-cap", cap)->capture_default_str();
    one->add_option("--precision-start", start)->capture_default_str();
    one->add_option("--out", out_path, "Write the certificate here instead of stdout");

    auto* chains = app.add_subcommand("chains", "The four reduction chains");
    chains->add_option("--precision-cap", cap)->capture_default_str();
    chains->add_option("--precision-start", start)->capture_default_str();

    bool count_only = false;
    auto* enumerate = app.add_subcommand("enumerate", "List the cases of S as k a c x");
    enumerate->add_flag("--count-only", count_only);

    long k_min = 7, k_max = 8, max_abc = 3, max_xyz = 6;
    bool explore = false, allow_equal = false;
    auto* search = app.add_subcommand("search", "Direct search for solutions");
    search->add_option("--k-min", k_min)->capture_default_str();
    search->add_option("--k-max", k_max)->capture_default_str();
    search->add_option("--max-abc", max_abc)->capture_default_str();
    search->add_option("--max-xyz", max_xyz)->capture_default_str();
    search->add_flag("--explore", explore, "Allow k < 7; results are reported only");
    search->add_flag("--allow-equal", allow_equal, "Keep tuples with a^2 x^k = b^2 y^k");

    std::string m_text, n_text;
    auto* decompose = app.add_subcommand("decompose", "Write M = u v^2, N = u w^2");
    decompose->add_option("M", m_text)->required();
    decompose->add_option("N", n_text)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (*all) {
            RunOptions options;
            options.policy = policy_from(start, cap);
            options.jobs = jobs;
            if (!override_text.empty()) {
                try {
                    options.lower_bound_override = parse_decimal(override_text);
                } catch (const std::exception&) {
                    throw UsageError("cannot parse --lower-bound-override '" + override_text + "'");
                }
            }
            RunReport previous;
            if (!resume_path.empty()) {
                std::ifstream in(resume_path);
                if (!in) throw UsageError("cannot read '" + resume_path + "'");
                try {
                    previous = report_from_json(nlohmann::json::parse(in));
                } catch (const nlohmann::json::exception& e) {
                    throw UsageError("malformed report '" + resume_path + "': " + e.what());
                }
                options.resume = &previous;
            }
            RunReport report = verify_all(options);
            print_summary(report, out);
            if (!out_path.empty()) write_json(to_json(report), out_path, out);
            return exit_code(report.verdict);
        }
        if (*one) {
            CaseParams c{ck, ca, cc, cx};
            if (ca < 1 || cc < 1 || cx < 2) throw UsageError("need a, c >= 1 and x >= 2");
            if (!in_S(ck, c.D())) throw UsageError("(k, a^2 c x^k) is not in S");
            auto cert = verify_case(c, VerifyCaseOptions{policy_from(start, cap), std::nullopt});
            write_json(to_json(cert), out_path, out);
            return case_exit(cert);
        }
        if (*chains) {
            PrecisionPolicy policy = policy_from(start, cap);
            std::vector<ChainCertificate> certs;
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const auto& regime : standard_regimes()) {
                certs.push_back(certify_chain(regime, policy));
                arr.push_back(to_json(certs.back()));
            }
            out << arr.dump(2) << '\n';
            return exit_code(decide(certs, Totals{}));
        }
        if (*enumerate) {
            auto cases = enumerate_cases();
            if (count_only) {
                out << cases.size() << '\n';
            } else {
                for (const auto& c : cases) out << c.k << ' ' << c.a << ' ' << c.c << ' ' << c.x << '\n';
            }
            return 0;
        }
        if (*search) {
            if (k_min > k_max || max_abc < 1 || max_xyz < 2) throw UsageError("empty search range");
            SearchRange range{{k_min, k_max}, {1, max_abc}, {1, max_abc}, {1, max_abc},
                              {2, max_xyz}, {2, max_xyz}, {2, max_xyz}};
            if (!explore && k_min < 7) throw UsageError("k below 7 needs --explore");
            if (k_min < 1) throw UsageError("k must be positive");
            auto found = search_solutions(range, !allow_equal, explore);
            for (const auto& t : found) {
                out << "k=" << t.k << " a=" << t.a << " b=" << t.b << " c=" << t.c << " x=" << t.x << " y=" << t.y
                    << " z=" << t.z << (is_symmetric(t) ? " (a^2 x^k = b^2 y^k)" : "") << '\n';
            }
            out << found.size() << " solution(s)\n";
            if (explore || allow_equal) return 0;
            return found.empty() ? 0 : 1;
        }
        if (*decompose) {
            Integer M, N;
            if (M.set_str(m_text, 10) != 0 || N.set_str(n_text, 10) != 0) throw UsageError("M and N must be integers");
            if (M < 1 || N < 1) throw UsageError("M and N must be positive");
            try {
                auto t = uvw_decompose(M, N);
                out << "u=" << t.u << " v=" << t.v << " w=" << t.w << '\n';
                return 0;
            } catch (const NotASquareError& e) {
                err << "not a square: " << e.what() << '\n';
                return 1;
            }
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace dioph
