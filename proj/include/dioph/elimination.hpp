#pragma once

// Reduction of every solution to the finite exceptional set S, certified by
// evaluating both sides of
//   (u v^2)^{k - 2 lambda - 2} < 2^8 mu_k^2 alpha^{2(k + 2 lambda)} k^{-(k - 2 lambda)}
// at the worst admissible point of each regime.

#include <vector>

#include "dioph/case_params.hpp"
#include "dioph/exactreal.hpp"

namespace dioph {

struct SetSBound {
    static constexpr unsigned long k7_limit = 132480;  // 1035 * 2^7
    static constexpr unsigned long k8_limit = 2560;    // 10 * 2^8
};

/// (k, d) in S  <=>  (k = 7 and d < 132480) or (k = 8 and d < 2560).
bool in_S(unsigned long k, const Integer& d);

struct EliminationChain {
    unsigned long k;
    Integer d_threshold;        // D_min
    DyadicInterval lambda_bound;
    DyadicInterval exponent;    // k - 2 lambda - 2
    DyadicInterval lhs;         // (D_min - 1)^{k - 2 lambda - 2}
    DyadicInterval rhs;         // 2^8 mu_k^2 (alpha^k)^{2 + 4 lambda / k} k^{-(k - 2 lambda)}
    bool contradiction;         // lhs.lo > rhs.hi
    bool decided;               // contradiction, or lhs.hi < rhs.lo
    unsigned precision;
};

/// Evaluates the chain for the regime with minimal a^2 c x^k equal to d_min.
/// The exponent bound is Lambda(k) for k >= 10 and Lambda_k(d_min) otherwise.
/// Throws UndecidableError if the two sides still overlap at the cap.
EliminationChain eliminate_chain(unsigned long k, const Integer& d_min, const PrecisionPolicy& policy = {});
/// Single-precision evaluation; may be undecided. Throws UndecidableError if
/// Lambda_k(d_min) itself cannot be enclosed at `precision`.
EliminationChain evaluate_chain(unsigned long k, const Integer& d_min, unsigned precision);

struct ChainRegime {
    unsigned long k;
    Integer d_min;
};

/// The four regimes: k >= 10 (at k = 10), k = 9, k = 8 outside S, k = 7 outside S.
std::vector<ChainRegime> standard_regimes();

/// Every (k, a, c, x) with k in {7, 8}, a, c >= 1, x >= 2 and (k, a^2 c x^k) in S,
/// ascending in (k, x, a, c).
std::vector<CaseParams> enumerate_cases();

}  // namespace dioph
