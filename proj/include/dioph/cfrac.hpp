#pragma once

// Exact continued fractions of theta = r^{1/k} via homographic states, and
// the per-case elimination through the convergent y/z^2 of alpha/x.
//
// Partial quotients are certified by exact k-th power comparisons. Interval
// arithmetic only proposes the candidate floor.

#include <optional>
#include <string>
#include <vector>

#include "dioph/bennett.hpp"
#include "dioph/case_params.hpp"
#include "dioph/exactreal.hpp"

namespace dioph {

class DegenerateStateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// (A theta + B) / (C theta + D) with theta = r^{1/k}.
struct HomographicState {
    Integer A{1}, B{0}, C{0}, D{1};
    Rational r;
    unsigned long k = 1;

    Integer determinant() const { return A * D - B * C; }
};

/// Exact sign of P theta + Q.
int sign_linear(const Integer& P, const Integer& Q, const Rational& r, unsigned long k);

/// floor of the state's value, certified by two exact sign tests.
/// `theta` (optional) seeds the candidate; it is refined internally as needed.
/// Throws DegenerateStateError if AD - BC = 0 or C theta + D = 0.
Integer floor_homographic(const HomographicState& s, const DyadicInterval* theta = nullptr);

struct ConvergentRecord {
    std::size_t index;
    Integer quotient;  // a_i
    Integer p;
    Integer q;
};

/// Lazily expanded continued fraction of r^{1/k}.
class ContinuedFraction {
public:
    ContinuedFraction(Rational r, unsigned long k);

    /// Record i, expanding as needed; nullopt past the end of a finite expansion.
    const ConvergentRecord* at(std::size_t i);
    /// Expands until some q_i > q_cap (or the expansion terminates).
    void extend_past(const Integer& q_cap);
    /// All records computed so far.
    const std::vector<ConvergentRecord>& records() const { return records_; }
    bool terminated() const { return terminated_; }
    bool is_rational() const { return exact_.has_value(); }

private:
    bool step();
    Integer next_quotient();

    Rational r_;
    unsigned long k_;
    std::optional<Rational> exact_;  // theta when r is a perfect k-th power
    Rational rational_tail_;         // remaining value on the rational branch
    HomographicState state_;
    DyadicInterval theta_;
    std::vector<ConvergentRecord> records_;
    bool terminated_ = false;
};

/// Records 0, 1, ... of the expansion of r^{1/k} up to and including the first q_i > q_cap.
std::vector<ConvergentRecord> cf_expand(const Rational& r, unsigned long k, const Integer& q_cap);
/// Expansion of alpha / x = (a^2 c / N)^{1/k} for one case.
std::vector<ConvergentRecord> cf_expand(const CaseParams& c, const Integer& q_cap);

/// C = ((2^k a c - 2) / (2^k a c))^{1/k}
DyadicInterval c_constant(const CaseParams& c, unsigned precision);

/// Enclosure of (16 mu_k alpha N / (a c) C^{-(k-1)})^{2 / (k - 2 lambda)}.
/// Throws UndecidableError unless k - 2 lambda is certified positive.
DyadicInterval qj_bound_enclosure(const CaseParams& c, const DyadicInterval& lambda, unsigned precision);
/// Integer ceiling of the upper endpoint, with lambda = Lambda_k(a^2 c x^k).
Integer qj_bound(const CaseParams& c, unsigned precision = 128);

/// Enclosure of (k a c x)/(2 alpha) (sqrt(k N) / (a^{3/k} c^{2/k} x))^{k-4} C^{k-1} - 2.
DyadicInterval aj1_bound_enclosure(const CaseParams& c, unsigned precision);
/// Certified lower endpoint of the bound above.
Rational aj1_lower_bound(const CaseParams& c, unsigned precision = 128);

enum class CaseReason { no_admissible_j, all_j_contradicted, survivor, undecidable };

std::string to_string(CaseReason reason);
CaseReason case_reason_from_string(const std::string& text);

enum class CandidateStatus { contradicted, survivor, undecided };

std::string to_string(CandidateStatus status);

struct CandidateRecord {
    std::size_t J;
    Integer p_J;
    Integer q_J;
    std::optional<Integer> a_next;  // a_{J+1}; absent only when the expansion ends at J
    std::string required_lower_bound;  // certified lower endpoint, decimal
    CandidateStatus status;
};

struct CaseCertificate {
    CaseParams params;
    Integer N;
    std::string lambda_lo, lambda_hi;
    Integer q_cap;
    std::vector<CandidateRecord> candidates;
    bool eliminated;
    CaseReason reason;
    unsigned precision_bits;
    double wall_time_seconds;
    std::string note;  // diagnostic for undecidable cases
};

struct VerifyCaseOptions {
    PrecisionPolicy policy{};
    /// Replaces the a_{J+1} bound by a constant; used to show the check can fail.
    std::optional<Rational> lower_bound_override;
};

/// Eliminates one case from S, or reports why it could not.
CaseCertificate verify_case(const CaseParams& c, const VerifyCaseOptions& options = {});

}  // namespace dioph
