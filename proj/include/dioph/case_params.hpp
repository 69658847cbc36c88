#pragma once

#include <compare>

#include "dioph/exactreal.hpp"

namespace dioph {

/// One tuple (k, a, c, x) with (k, a^2 c x^k) in the exceptional set.
struct CaseParams {
    unsigned long k;
    unsigned long a;
    unsigned long c;
    unsigned long x;

    /// a^2 c x^k
    Integer D() const { return Integer(a) * a * c * pow(Integer(x), k); }
    /// N = a^2 c x^k - 1 (= u v^2)
    Integer N() const { return D() - 1; }
    /// alpha^k = 1 + 1/N
    Rational alpha_pow_k() const { return Rational(D(), N()); }
    /// (alpha / x)^k = a^2 c / N
    Rational radicand() const { return Rational(Integer(a) * a * c, N()); }

    /// Ordering (k, x, a, c).
    friend auto operator<=>(const CaseParams& l, const CaseParams& r) {
        if (auto o = l.k <=> r.k; o != 0) return o;
        if (auto o = l.x <=> r.x; o != 0) return o;
        if (auto o = l.a <=> r.a; o != 0) return o;
        return l.c <=> r.c;
    }
    friend bool operator==(const CaseParams&, const CaseParams&) = default;
};

}  // namespace dioph
