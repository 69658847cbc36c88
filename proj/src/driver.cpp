#include "dioph/driver.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

namespace dioph {

using nlohmann::json;
using nlohmann::ordered_json;

DecimalEnclosure DecimalEnclosure::of(const DyadicInterval& v) {
    return {v.lo().to_decimal(kDecimalDigits, Rounding::down), v.hi().to_decimal(kDecimalDigits, Rounding::up)};
}

ChainCertificate certify_chain(const ChainRegime& regime, const PrecisionPolicy& policy) {
    auto fill = [&](const EliminationChain& ch, std::string note) {
        return ChainCertificate{ch.k,
                                ch.d_threshold,
                                DecimalEnclosure::of(ch.lambda_bound),
                                DecimalEnclosure::of(ch.exponent),
                                DecimalEnclosure::of(ch.lhs),
                                DecimalEnclosure::of(ch.rhs),
                                ch.contradiction,
                                ch.decided,
                                ch.precision,
                                std::move(note)};
    };
    try {
        return fill(eliminate_chain(regime.k, regime.d_min, policy), "");
    } catch (const UndecidableError& e) {
        try {
            return fill(evaluate_chain(regime.k, regime.d_min, policy.cap_bits), e.what());
        } catch (const UndecidableError& inner) {
            return ChainCertificate{regime.k, regime.d_min, {}, {}, {}, {}, false, false, policy.cap_bits, inner.what()};
        }
    }
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "PASS";
        case Verdict::fail: return "FAIL";
        case Verdict::incomplete: return "INCOMPLETE";
    }
    return "INCOMPLETE";
}

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::pass: return 0;
        case Verdict::fail: return 1;
        case Verdict::incomplete: return 2;
    }
    return 2;
}

SearchRange default_search_range() { return SearchRange{{7, 8}, {1, 3}, {1, 3}, {1, 3}, {2, 6}, {2, 6}, {2, 6}}; }

unsigned effective_jobs(unsigned requested) {
    if (const char* env = std::getenv("VERIFIER_JOBS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) requested = static_cast<unsigned>(v);
    }
    return std::max(1u, requested);
}

std::vector<CaseCertificate> verify_cases(const std::vector<CaseParams>& cases, const VerifyCaseOptions& options,
                                          unsigned jobs) {
    std::vector<std::optional<CaseCertificate>> slots(cases.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= cases.size()) return;
            try {
                slots[i] = verify_case(cases[i], options);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = cases.size();
                return;
            }
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(cases.size(), 1))));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);

    std::vector<CaseCertificate> out;
    out.reserve(cases.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

Totals tally(const std::vector<ChainCertificate>& chains, const std::vector<CaseCertificate>& cases,
             const SearchSummary& search) {
    Totals t;
    t.chains = chains.size();
    for (const auto& ch : chains) t.chains_contradicted += ch.contradiction;
    t.cases = cases.size();
    for (const auto& c : cases) {
        t.eliminated += c.eliminated;
        t.candidates_examined += c.candidates.size();
        switch (c.reason) {
            case CaseReason::no_admissible_j: ++t.no_admissible_j; break;
            case CaseReason::all_j_contradicted: ++t.all_j_contradicted; break;
            case CaseReason::survivor: ++t.survivors; break;
            case CaseReason::undecidable: ++t.undecidable; break;
        }
    }
    t.search_solutions = search.solutions.size();
    return t;
}

Verdict decide(const std::vector<ChainCertificate>& chains, const Totals& t) {
    // a chain decided without contradiction refutes the reduction; an undecided one leaves it open
    bool chain_refuted = false, chain_open = false;
    for (const auto& ch : chains) {
        if (ch.contradiction) continue;
        (ch.decided ? chain_refuted : chain_open) = true;
    }
    if (chain_refuted || t.survivors > 0 || t.search_solutions > 0) return Verdict::fail;
    if (chain_open || t.undecidable > 0) return Verdict::incomplete;
    return Verdict::pass;
}

namespace {

bool same_params(const RunReport& prev, const RunOptions& options) {
    return prev.policy.start_bits == options.policy.start_bits && prev.policy.cap_bits == options.policy.cap_bits &&
           prev.lower_bound_override == options.lower_bound_override;
}

}  // namespace

RunReport verify_all(const RunOptions& options) {
    const auto started = std::chrono::steady_clock::now();
    RunReport report;
    report.policy = options.policy;
    report.lower_bound_override = options.lower_bound_override;

    for (const auto& regime : standard_regimes()) report.chains.push_back(certify_chain(regime, options.policy));

    std::vector<CaseParams> cases = options.cases.empty() ? enumerate_cases() : options.cases;
    std::map<CaseParams, const CaseCertificate*> reusable;
    if (options.resume && same_params(*options.resume, options)) {
        for (const auto& c : options.resume->cases) {
            if (c.reason != CaseReason::undecidable) reusable.emplace(c.params, &c);
        }
    }
    std::vector<CaseParams> todo;
    for (const auto& c : cases) {
        if (!reusable.count(c)) todo.push_back(c);
    }
    VerifyCaseOptions vopts{options.policy, options.lower_bound_override};
    std::vector<CaseCertificate> fresh = verify_cases(todo, vopts, effective_jobs(options.jobs));

    std::size_t f = 0;
    for (const auto& c : cases) {
        auto it = reusable.find(c);
        report.cases.push_back(it != reusable.end() ? *it->second : std::move(fresh[f++]));
    }

    report.search = SearchSummary{default_search_range(), true, {}};
    report.search.solutions = search_solutions(report.search.range, true);

    report.totals = tally(report.chains, report.cases, report.search);
    report.verdict = decide(report.chains, report.totals);
    report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

ordered_json enclosure_json(const DecimalEnclosure& e) { return ordered_json{{"lo", e.lo}, {"hi", e.hi}}; }

DecimalEnclosure enclosure_from(const json& j) { return {j.at("lo").get<std::string>(), j.at("hi").get<std::string>()}; }

Integer integer_from(const json& j) { return Integer(j.get<std::string>()); }

ordered_json range_json(const IntRange& r) { return ordered_json::array({r.lo, r.hi}); }

IntRange range_from(const json& j) { return {j.at(0).get<long>(), j.at(1).get<long>()}; }

CandidateStatus status_from(const std::string& s) {
    for (auto st : {CandidateStatus::contradicted, CandidateStatus::survivor, CandidateStatus::undecided}) {
        if (to_string(st) == s) return st;
    }
    throw std::invalid_argument("unknown candidate status '" + s + "'");
}

Verdict verdict_from(const std::string& s) {
    for (auto v : {Verdict::pass, Verdict::fail, Verdict::incomplete}) {
        if (to_string(v) == s) return v;
    }
    throw std::invalid_argument("unknown verdict '" + s + "'");
}

}  // namespace

ordered_json to_json(const CaseCertificate& cert) {
    ordered_json cands = ordered_json::array();
    for (const auto& c : cert.candidates) {
        cands.push_back(ordered_json{
            {"J", c.J},
            {"p_J", c.p_J.get_str()},
            {"q_J", c.q_J.get_str()},
            {"a_next", c.a_next ? ordered_json(c.a_next->get_str()) : ordered_json(nullptr)},
            {"required_lower_bound", c.required_lower_bound},
            {"status", to_string(c.status)},
        });
    }
    const auto& p = cert.params;
    return ordered_json{
        {"case", ordered_json{{"k", p.k}, {"a", p.a}, {"c", p.c}, {"x", p.x}}},
        {"N", cert.N.get_str()},
        {"lambda", ordered_json{{"lo", cert.lambda_lo}, {"hi", cert.lambda_hi}}},
        {"q_cap", cert.q_cap.get_str()},
        {"candidates", cands},
        {"eliminated", cert.eliminated},
        {"reason", to_string(cert.reason)},
        {"precision_bits", cert.precision_bits},
        {"wall_time_seconds", cert.wall_time_seconds},
        {"note", cert.note},
    };
}

CaseCertificate case_from_json(const json& j) {
    CaseCertificate c;
    const auto& p = j.at("case");
    c.params = {p.at("k").get<unsigned long>(), p.at("a").get<unsigned long>(), p.at("c").get<unsigned long>(),
                p.at("x").get<unsigned long>()};
    c.N = integer_from(j.at("N"));
    c.lambda_lo = j.at("lambda").at("lo").get<std::string>();
    c.lambda_hi = j.at("lambda").at("hi").get<std::string>();
    c.q_cap = integer_from(j.at("q_cap"));
    for (const auto& cj : j.at("candidates")) {
        CandidateRecord r{cj.at("J").get<std::size_t>(), integer_from(cj.at("p_J")), integer_from(cj.at("q_J")),
                          std::nullopt, cj.at("required_lower_bound").get<std::string>(),
                          status_from(cj.at("status").get<std::string>())};
        if (!cj.at("a_next").is_null()) r.a_next = integer_from(cj.at("a_next"));
        c.candidates.push_back(std::move(r));
    }
    c.eliminated = j.at("eliminated").get<bool>();
    c.reason = case_reason_from_string(j.at("reason").get<std::string>());
    c.precision_bits = j.at("precision_bits").get<unsigned>();
    c.wall_time_seconds = j.at("wall_time_seconds").get<double>();
    c.note = j.at("note").get<std::string>();
    return c;
}

ordered_json to_json(const ChainCertificate& ch) {
    return ordered_json{
        {"k", ch.k},
        {"d_threshold", ch.d_threshold.get_str()},
        {"lambda", enclosure_json(ch.lambda)},
        {"exponent", enclosure_json(ch.exponent)},
        {"lhs", enclosure_json(ch.lhs)},
        {"rhs", enclosure_json(ch.rhs)},
        {"contradiction", ch.contradiction},
        {"decided", ch.decided},
        {"precision_bits", ch.precision_bits},
        {"note", ch.note},
    };
}

ChainCertificate chain_from_json(const json& j) {
    return ChainCertificate{j.at("k").get<unsigned long>(),
                            integer_from(j.at("d_threshold")),
                            enclosure_from(j.at("lambda")),
                            enclosure_from(j.at("exponent")),
                            enclosure_from(j.at("lhs")),
                            enclosure_from(j.at("rhs")),
                            j.at("contradiction").get<bool>(),
                            j.at("decided").get<bool>(),
                            j.at("precision_bits").get<unsigned>(),
                            j.at("note").get<std::string>()};
}

ordered_json to_json(const RunReport& r) {
    ordered_json chains = ordered_json::array(), cases = ordered_json::array(), sols = ordered_json::array();
    for (const auto& ch : r.chains) chains.push_back(to_json(ch));
    for (const auto& c : r.cases) cases.push_back(to_json(c));
    for (const auto& s : r.search.solutions) sols.push_back(ordered_json::array({s.k, s.a, s.b, s.c, s.x, s.y, s.z}));
    const auto& sr = r.search.range;
    const auto& t = r.totals;
    return ordered_json{
        {"version", r.version},
        {"params",
         ordered_json{{"precision_start", r.policy.start_bits},
                      {"precision_cap", r.policy.cap_bits},
                      {"lower_bound_override",
                       r.lower_bound_override ? ordered_json(r.lower_bound_override->get_str()) : ordered_json(nullptr)}}},
        {"chains", chains},
        {"cases", cases},
        {"search",
         ordered_json{{"k", range_json(sr.k)},
                      {"a", range_json(sr.a)},
                      {"b", range_json(sr.b)},
                      {"c", range_json(sr.c)},
                      {"x", range_json(sr.x)},
                      {"y", range_json(sr.y)},
                      {"z", range_json(sr.z)},
                      {"require_neq", r.search.require_neq},
                      {"solutions", sols}}},
        {"totals",
         ordered_json{{"chains", t.chains},
                      {"chains_contradicted", t.chains_contradicted},
                      {"cases", t.cases},
                      {"eliminated", t.eliminated},
                      {"no_admissible_j", t.no_admissible_j},
                      {"all_j_contradicted", t.all_j_contradicted},
                      {"survivors", t.survivors},
                      {"undecidable", t.undecidable},
                      {"candidates_examined", t.candidates_examined},
                      {"search_solutions", t.search_solutions}}},
        {"verdict", to_string(r.verdict)},
        {"wall_time_seconds", r.wall_time_seconds},
    };
}

RunReport report_from_json(const json& j) {
    RunReport r;
    r.version = j.at("version").get<std::string>();
    const auto& p = j.at("params");
    r.policy = {p.at("precision_start").get<unsigned>(), p.at("precision_cap").get<unsigned>()};
    if (!p.at("lower_bound_override").is_null()) r.lower_bound_override = Rational(p.at("lower_bound_override").get<std::string>());
    for (const auto& ch : j.at("chains")) r.chains.push_back(chain_from_json(ch));
    for (const auto& c : j.at("cases")) r.cases.push_back(case_from_json(c));
    const auto& s = j.at("search");
    r.search.range = {range_from(s.at("k")), range_from(s.at("a")), range_from(s.at("b")), range_from(s.at("c")),
                      range_from(s.at("x")), range_from(s.at("y")), range_from(s.at("z"))};
    r.search.require_neq = s.at("require_neq").get<bool>();
    for (const auto& t : s.at("solutions")) {
        r.search.solutions.push_back({t.at(0).get<long>(), t.at(1).get<long>(), t.at(2).get<long>(),
                                      t.at(3).get<long>(), t.at(4).get<long>(), t.at(5).get<long>(),
                                      t.at(6).get<long>()});
    }
    r.totals = tally(r.chains, r.cases, r.search);
    r.verdict = verdict_from(j.at("verdict").get<std::string>());
    r.wall_time_seconds = j.at("wall_time_seconds").get<double>();
    return r;
}

ordered_json without_timing(ordered_json j) {
    if (j.contains("wall_time_seconds")) j["wall_time_seconds"] = 0.0;
    if (j.contains("cases")) {
        for (auto& c : j["cases"]) c["wall_time_seconds"] = 0.0;
    }
    return j;
}

}  // namespace dioph
