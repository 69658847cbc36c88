#include "dioph/bennett.hpp"

#include <numeric>

namespace dioph {

std::vector<unsigned long> distinct_primes(unsigned long n) {
    std::vector<unsigned long> primes;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            primes.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) primes.push_back(n);
    return primes;
}

MuValue mu(unsigned long n, unsigned precision) {
    if (n < 2) throw std::invalid_argument("mu: n must be at least 2");
    MuValue out{n, {}, DyadicInterval::point(Dyadic(1), precision)};
    const unsigned w = precision + 8;
    DyadicInterval product = DyadicInterval::point(Dyadic(1), w);
    for (unsigned long p : distinct_primes(n)) {
        out.factors.push_back({p, Rational(1, p - 1)});
        product = product * kth_root_interval(Rational(p), p - 1, w);
    }
    out.enclosure = product.rounded(precision);
    return out;
}

MuSqrtCertificate mu_le_sqrt(unsigned long k) {
    if (k < 2) throw std::invalid_argument("mu_le_sqrt: k must be at least 2");
    auto primes = distinct_primes(k);
    unsigned long L = 1;
    for (unsigned long p : primes) L = std::lcm(L, p - 1);
    Integer lhs = 1;
    for (unsigned long p : primes) lhs *= pow(Integer(p), 2 * L / (p - 1));
    Integer rhs = pow(Integer(k), L);
    return {k, L, lhs, rhs, lhs <= rhs};
}

DyadicInterval root_pair_sum(const Integer& D, unsigned precision) {
    if (D < 1) throw std::invalid_argument("root_pair_sum: D must be positive");
    const unsigned w = precision + 4;
    DyadicInterval upper = kth_root_interval(Rational(D), 2, w);
    if (D == 1) return upper.rounded(precision);
    return (kth_root_interval(Rational(D - 1), 2, w) + upper).rounded(precision);
}

HypothesisCertificate hypothesis_check(unsigned long n, const Integer& N, const PrecisionPolicy& policy) {
    if (n < 3) throw std::invalid_argument("hypothesis_check: n must be at least 3");
    if (N < 1) throw std::invalid_argument("hypothesis_check: N must be positive");
    auto result = escalate(policy, "Bennett hypothesis", [&](unsigned bits) -> std::optional<HypothesisCertificate> {
        const unsigned w = bits + 16;
        DyadicInterval s = root_pair_sum(N + 1, w);
        DyadicInterval lhs = pow_int(s, 2 * (static_cast<long>(n) - 2)).rounded(bits);
        DyadicInterval rhs = pow_int(mu(n, w).enclosure * Rational(n), static_cast<long>(n)).rounded(bits);
        if (lhs.certainly_greater(rhs)) return HypothesisCertificate{n, N, true, lhs, rhs, bits};
        if (lhs.certainly_less(rhs)) return HypothesisCertificate{n, N, false, lhs, rhs, bits};
        return std::nullopt;
    });
    return result.value;
}

std::optional<DyadicInterval> lambda_k_of_d(unsigned long K, const Integer& D, unsigned precision) {
    const unsigned w = precision + 16;
    DyadicInterval log_kmu = interval_ln(mu(K, w).enclosure * Rational(K));
    DyadicInterval den = interval_ln(root_pair_sum(D, w)).scaled(1) - log_kmu;
    if (!den.certainly_positive()) return std::nullopt;
    DyadicInterval two = DyadicInterval::point(Dyadic(2), w);
    return (two + log_kmu.scaled(1) / den).rounded(precision);
}

std::optional<DyadicInterval> lambda_lemma_form(unsigned long K, const Integer& N, unsigned precision) {
    const unsigned w = precision + 16;
    DyadicInterval kmu = mu(K, w).enclosure * Rational(K);
    DyadicInterval s2 = pow_int(root_pair_sum(N + 1, w), 2);
    DyadicInterval bottom = interval_ln(s2 / kmu);
    if (!bottom.certainly_positive()) return std::nullopt;
    DyadicInterval one = DyadicInterval::point(Dyadic(1), w);
    return (one + interval_ln(s2 * kmu) / bottom).rounded(precision);
}

DyadicInterval lambda_cap_value(unsigned long K, unsigned precision) {
    if (K < 7) throw std::invalid_argument("lambda_cap_value: K must be at least 7");
    const unsigned w = precision + 16;
    DyadicInterval log_k = interval_ln(DyadicInterval::point(Dyadic(static_cast<long>(K)), w));
    DyadicInterval den = ln2(w) * Rational(2 * (K + 1)) - log_k * Rational(3);
    if (!den.certainly_positive()) throw UndecidableError("Lambda(K) denominator", precision);
    DyadicInterval two = DyadicInterval::point(Dyadic(2), w);
    return (two + log_k * Rational(6) / den).rounded(precision);
}

DyadicInterval LambdaBundle::k_minus_2lambda() const {
    return DyadicInterval::point(Dyadic(static_cast<long>(k)), lambda.precision()) - lambda.scaled(1);
}

LambdaBundle lambda_case(unsigned long k, const Integer& D, unsigned precision) {
    if (k < 7) throw std::invalid_argument("lambda_case: k must be at least 7");
    if (D < pow(Integer(2), k)) throw std::invalid_argument("lambda_case: D must be at least 2^k");
    auto lambda = lambda_k_of_d(k, D, precision);
    if (!lambda) throw UndecidableError("Lambda_k(D) denominator sign", precision);
    return LambdaBundle{k, D, *lambda, lambda_cap_value(k, precision), precision};
}

LambdaBundle lambda_case(unsigned long k, const Integer& D, const PrecisionPolicy& policy) {
    return escalate(policy, "Lambda_k(D)", [&](unsigned bits) -> std::optional<LambdaBundle> {
               try {
                   return lambda_case(k, D, bits);
               } catch (const UndecidableError&) {
                   return std::nullopt;
               }
           }).value;
}

}  // namespace dioph
