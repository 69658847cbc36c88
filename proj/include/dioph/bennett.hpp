#pragma once

// Quantities from Bennett's effective irrationality measure for
// (1 + 1/N)^{1/n}: the constant mu_n, the lemma's hypothesis, and the
// approximation exponents Lambda_K(D) and Lambda(K).

#include <vector>

#include "dioph/exactreal.hpp"

namespace dioph {

struct MuFactor {
    unsigned long prime;
    Rational exponent;  // 1 / (prime - 1)
};

struct MuValue {
    unsigned long n;
    std::vector<MuFactor> factors;  // distinct primes of n, ascending
    DyadicInterval enclosure;       // contains prod p^{1/(p-1)}
};

/// Distinct prime divisors of n in ascending order.
std::vector<unsigned long> distinct_primes(unsigned long n);

/// mu_n = prod_{p | n} p^{1/(p-1)}, n >= 2.
MuValue mu(unsigned long n, unsigned precision = 128);

/// Exact certificate for mu_k <= sqrt(k): with L = lcm(p - 1), compares
/// prod p^{2L/(p-1)} against k^L as integers.
struct MuSqrtCertificate {
    unsigned long k;
    unsigned long lcm;
    Integer lhs;  // prod p^{2L/(p-1)}
    Integer rhs;  // k^L
    bool holds;   // lhs <= rhs
};

MuSqrtCertificate mu_le_sqrt(unsigned long k);

/// Certified strict inequality (sqrt N + sqrt(N+1))^{2(n-2)} > (n mu_n)^n.
struct HypothesisCertificate {
    unsigned long n;
    Integer N;
    bool holds;
    DyadicInterval lhs;
    DyadicInterval rhs;
    unsigned precision;
};

/// Throws UndecidableError if the two sides cannot be separated before the cap.
HypothesisCertificate hypothesis_check(unsigned long n, const Integer& N, const PrecisionPolicy& policy = {});

struct LambdaBundle {
    unsigned long k;
    Integer D;                  // a^2 c x^k
    DyadicInterval lambda;      // Lambda_k(D)
    DyadicInterval lambda_cap;  // Lambda(k)
    unsigned precision;

    /// k - 2 lambda as an enclosure.
    DyadicInterval k_minus_2lambda() const;
};

/// sqrt(D - 1) + sqrt(D), bracketed through exact integer roots.
DyadicInterval root_pair_sum(const Integer& D, unsigned precision);

/// Lambda_K(D) = 2 + 2 ln(K mu_K) / (2 ln(sqrt(D-1) + sqrt D) - ln(K mu_K)).
/// Returns nullopt if the denominator cannot be certified positive at `precision`.
std::optional<DyadicInterval> lambda_k_of_d(unsigned long K, const Integer& D, unsigned precision);

/// The exponent in the form 1 + ln(s^2 K mu_K) / ln(s^2 / (K mu_K)), s = sqrt N + sqrt(N+1).
std::optional<DyadicInterval> lambda_lemma_form(unsigned long K, const Integer& N, unsigned precision);

/// Lambda(K) = 2 + 6 ln K / (2(K+1) ln 2 - 3 ln K), K >= 7.
DyadicInterval lambda_cap_value(unsigned long K, unsigned precision = 128);

/// Lambda_k(D) and Lambda(k) at a fixed precision. Requires k >= 7 and D >= 2^k.
/// Throws UndecidableError if Lambda_k(D) cannot be enclosed at that precision.
LambdaBundle lambda_case(unsigned long k, const Integer& D, unsigned precision);
/// As above, escalating precision per the policy.
LambdaBundle lambda_case(unsigned long k, const Integer& D, const PrecisionPolicy& policy);

/// Decides a < b for two enclosures computed by `make(bits)`, escalating.
/// Returns true iff a < b is certified, false iff a > b is certified.
template <typename Make>
bool certified_less(const PrecisionPolicy& policy, std::string_view what, Make&& make) {
    return escalate(policy, what, [&](unsigned bits) -> std::optional<bool> {
               auto [a, b] = make(bits);
               if (a.certainly_less(b)) return true;
               if (a.certainly_greater(b)) return false;
               return std::nullopt;
           }).value;
}

}  // namespace dioph
