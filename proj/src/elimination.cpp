#include "dioph/elimination.hpp"

#include "dioph/bennett.hpp"

namespace dioph {

bool in_S(unsigned long k, const Integer& d) {
    if (k == 7) return d < SetSBound::k7_limit;
    if (k == 8) return d < SetSBound::k8_limit;
    return false;
}

EliminationChain evaluate_chain(unsigned long k, const Integer& d_min, unsigned precision) {
    if (k < 7) throw std::invalid_argument("evaluate_chain: k must be at least 7");
    if (d_min < pow(Integer(2), k)) throw std::invalid_argument("evaluate_chain: d_min must be at least 2^k");
    const unsigned w = precision + 16;

    DyadicInterval lambda;
    if (k >= 10) {
        lambda = lambda_cap_value(k, w);
    } else {
        auto value = lambda_k_of_d(k, d_min, w);
        if (!value) throw UndecidableError("Lambda_k(D_min)", precision);
        lambda = *value;
    }
    const Rational kq(static_cast<long>(k));
    const DyadicInterval k_iv = DyadicInterval::enclose(kq, w);
    const DyadicInterval two_lambda = lambda.scaled(1);

    DyadicInterval exponent = k_iv - two_lambda - DyadicInterval::point(Dyadic(2), w);
    DyadicInterval lhs = interval_pow(DyadicInterval::enclose(Integer(d_min - 1), w), exponent);

    DyadicInterval mu_sq = pow_int(mu(k, w).enclosure, 2);
    DyadicInterval alpha_k = DyadicInterval::enclose(Rational(d_min, d_min - 1), w);
    DyadicInterval alpha_exp = DyadicInterval::point(Dyadic(2), w) + lambda.scaled(2) / k_iv;
    DyadicInterval rhs = (mu_sq * interval_pow(alpha_k, alpha_exp) *
                          interval_pow(k_iv, -(k_iv - two_lambda)))
                             .scaled(8);

    lhs = lhs.rounded(precision);
    rhs = rhs.rounded(precision);
    bool contradiction = lhs.certainly_greater(rhs);
    bool decided = contradiction || lhs.certainly_less(rhs);
    return EliminationChain{k, d_min, lambda.rounded(precision), exponent.rounded(precision), lhs, rhs,
                            contradiction, decided, precision};
}

EliminationChain eliminate_chain(unsigned long k, const Integer& d_min, const PrecisionPolicy& policy) {
    std::string what = "elimination chain k=" + std::to_string(k);
    return escalate(policy, what, [&](unsigned bits) -> std::optional<EliminationChain> {
               try {
                   EliminationChain chain = evaluate_chain(k, d_min, bits);
                   if (chain.decided) return chain;
               } catch (const UndecidableError&) {
               }
               return std::nullopt;
           }).value;
}

std::vector<ChainRegime> standard_regimes() {
    return {{10, Integer(1024)},
            {9, Integer(512)},
            {8, Integer(SetSBound::k8_limit)},
            {7, Integer(SetSBound::k7_limit)}};
}

std::vector<CaseParams> enumerate_cases() {
    std::vector<CaseParams> out;
    for (auto [k, limit] : {std::pair{7ul, SetSBound::k7_limit}, std::pair{8ul, SetSBound::k8_limit}}) {
        for (unsigned long x = 2;; ++x) {
            Integer xk = pow(Integer(x), k);
            if (xk >= limit) break;
            // a^2 c <= floor((limit - 1) / x^k)
            unsigned long m = Integer((limit - 1) / xk).get_ui();
            for (unsigned long a = 1; a * a <= m; ++a) {
                for (unsigned long c = 1; a * a * c <= m; ++c) out.push_back({k, a, c, x});
            }
        }
    }
    return out;
}

}  // namespace dioph
