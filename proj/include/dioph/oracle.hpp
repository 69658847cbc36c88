#pragma once

// Brute-force search for solutions of
//   (a^2 c x^k - 1)(b^2 c y^k - 1) = (a b c z^k - 1)^2
// and exact-rational probes of the algebra behind the reduction.

#include <stdexcept>
#include <vector>

#include "dioph/exactreal.hpp"

namespace dioph {

struct IntRange {
    long lo = 1;
    long hi = 0;

    bool empty() const { return hi < lo; }
};

struct SearchRange {
    IntRange k, a, b, c, x, y, z;
};

struct SolutionTuple {
    long k, a, b, c, x, y, z;

    auto operator<=>(const SolutionTuple&) const = default;
};

/// Both sides evaluated as products.
bool satisfies_equation(const SolutionTuple& t);
/// Both sides fully expanded, evaluated independently of the above.
bool satisfies_equation_expanded(const SolutionTuple& t);
/// a^2 x^k = b^2 y^k, where both sides agree trivially.
bool is_symmetric(const SolutionTuple& t);

/// Exhaustive search. Unless `explore` is set, the range must satisfy
/// k >= 7, a, b, c >= 1 and x, y, z >= 2 (std::invalid_argument otherwise).
std::vector<SolutionTuple> search_solutions(const SearchRange& range, bool require_neq, bool explore = false);

class NotASquareError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct UVWTriple {
    Integer u, v, w;
};

/// M = u v^2 and N = u w^2 with u minimal. Requires M N to be a perfect square.
/// u is found by trial division up to the cube root of gcd(M, N).
UVWTriple uvw_decompose(const Integer& M, const Integer& N);

/// Squarefree part of n >= 1 (trial division to the cube root).
Integer squarefree_part(const Integer& n);

struct IdentityReport {
    Integer u, v, w;
    Rational alpha_k;      // 1 + 1/(u v^2)
    Rational beta_k;       // (u v^2 + 1)(u w^2 + 1) / (u v w + 1)^2
    Rational difference;   // alpha_k - beta_k
    Rational closed_form;  // (u v^2 (2uvw - u v^2) + 2uvw + 1) / (u v^2 (uvw + 1)^2)
    bool closed_form_holds;
    bool positive;
    bool below_two_alpha_over;  // difference < 2 alpha_k / (uvw + 1)
    bool sum_identity_holds;    // u v^2 + u w^2 = (uv^2 + 1)(uw^2 + 1) - (uvw + 1)^2 + 2uvw

    bool all() const { return closed_form_holds && positive && below_two_alpha_over && sum_identity_holds; }
};

/// Requires w > v >= 1 and u >= 1 (std::invalid_argument otherwise).
IdentityReport check_identities(const Integer& u, const Integer& v, const Integer& w);

class InconsistentTupleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WlbReport {
    bool w_lower_bound;  // w^2 > k^k u^{k-2} v^{2(k-1)}
    bool z_lower_bound;  // z > sqrt(k u v^2) a^{-3/k} c^{-2/k} x^{-1}, with a^2 c x^k = u v^2 + 1
    bool x_integral;     // (u v^2 + 1) / (a^2 c) is a perfect k-th power
};

/// Throws InconsistentTupleError unless u v w + 1 = a b c z^k.
WlbReport check_wlb(const Integer& u, const Integer& v, const Integer& w, const Integer& a, const Integer& b,
                    const Integer& c, const Integer& z, unsigned long k);

}  // namespace dioph
