#pragma once

// Full run: the four reduction chains, every case of S, and a small direct
// search, collected into one report.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dioph/cfrac.hpp"
#include "dioph/elimination.hpp"
#include "dioph/oracle.hpp"

namespace dioph {

inline constexpr const char* kVersion = DIOPH_VERSION;
inline constexpr int kDecimalDigits = 30;

struct DecimalEnclosure {
    std::string lo, hi;

    static DecimalEnclosure of(const DyadicInterval& v);
};

struct ChainCertificate {
    unsigned long k;
    Integer d_threshold;
    DecimalEnclosure lambda, exponent, lhs, rhs;
    bool contradiction;
    bool decided;
    unsigned precision_bits;
    std::string note;
};

/// Runs one chain under `policy`; never throws UndecidableError.
ChainCertificate certify_chain(const ChainRegime& regime, const PrecisionPolicy& policy);

struct SearchSummary {
    SearchRange range;
    bool require_neq;
    std::vector<SolutionTuple> solutions;
};

enum class Verdict { pass, fail, incomplete };

std::string to_string(Verdict v);
/// 0 pass, 1 fail, 2 incomplete.
int exit_code(Verdict v);

struct Totals {
    std::size_t chains = 0, chains_contradicted = 0;
    std::size_t cases = 0, eliminated = 0, no_admissible_j = 0, all_j_contradicted = 0;
    std::size_t survivors = 0, undecidable = 0, candidates_examined = 0;
    std::size_t search_solutions = 0;
};

struct RunReport {
    std::string version = kVersion;
    PrecisionPolicy policy;
    std::optional<Rational> lower_bound_override;
    std::vector<ChainCertificate> chains;
    std::vector<CaseCertificate> cases;
    SearchSummary search;
    Totals totals;
    Verdict verdict = Verdict::incomplete;
    double wall_time_seconds = 0.0;
};

struct RunOptions {
    PrecisionPolicy policy{};
    unsigned jobs = 1;
    std::optional<Rational> lower_bound_override;
    /// Certificates from an earlier run; matching decided cases are reused.
    const RunReport* resume = nullptr;
    /// Restricts the cases (all of S when empty).
    std::vector<CaseParams> cases;
};

/// The default search: k in {7, 8}, a, b, c <= 3, x, y, z in [2, 6].
SearchRange default_search_range();

/// Runs `cases` through verify_case on `jobs` threads; output order matches input.
std::vector<CaseCertificate> verify_cases(const std::vector<CaseParams>& cases, const VerifyCaseOptions& options,
                                          unsigned jobs);

Totals tally(const std::vector<ChainCertificate>& chains, const std::vector<CaseCertificate>& cases,
             const SearchSummary& search);
/// FAIL on any survivor, search hit or refuted chain; INCOMPLETE on anything undecided.
Verdict decide(const std::vector<ChainCertificate>& chains, const Totals& totals);

RunReport verify_all(const RunOptions& options = {});

/// Worker count after applying the VERIFIER_JOBS override.
unsigned effective_jobs(unsigned requested);

nlohmann::ordered_json to_json(const CaseCertificate& cert);
nlohmann::ordered_json to_json(const ChainCertificate& chain);
nlohmann::ordered_json to_json(const RunReport& report);
CaseCertificate case_from_json(const nlohmann::json& j);
ChainCertificate chain_from_json(const nlohmann::json& j);
RunReport report_from_json(const nlohmann::json& j);

/// Report with every timing field zeroed, for comparisons.
nlohmann::ordered_json without_timing(nlohmann::ordered_json j);

}  // namespace dioph
