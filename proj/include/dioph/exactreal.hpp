#pragma once

// Exact rationals and outward-rounded dyadic interval arithmetic.
//
// Every transcendental quantity used by the verifier (logarithms, rational
// powers, k-th roots) is carried as a DyadicInterval that provably encloses
// the exact value. Decisions are made only when two enclosures are disjoint.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

#include <gmpxx.h>

namespace dioph {

using Integer = mpz_class;
using Rational = mpq_class;

enum class Rounding { down, up };

/// Raised when a strict comparison cannot be decided before the precision cap.
class UndecidableError : public std::runtime_error {
public:
    UndecidableError(const std::string& what, unsigned precision)
        : std::runtime_error(what + " (undecided at " + std::to_string(precision) + " bits)"),
          precision_(precision) {}
    unsigned precision() const noexcept { return precision_; }

private:
    unsigned precision_;
};

// ---------------------------------------------------------------------------
// Exact primitives

/// Exact ordering of q against r^{1/k}, decided by comparing q^k with r.
/// Requires r > 0 and k >= 1.
std::strong_ordering rat_cmp_kth_root(const Rational& q, const Rational& r, unsigned long k);

/// Largest m with m^k <= n.
Integer integer_kth_root_floor(const Integer& n, unsigned long k);

/// True iff r (> 0) is the k-th power of a rational; the root is stored in *root.
bool is_perfect_kth_power(const Rational& r, unsigned long k, Rational* root = nullptr);

/// Number of significant bits of |n| (0 for n = 0).
std::size_t bit_length(const Integer& n);

Integer pow(const Integer& base, unsigned long e);
Rational pow(const Rational& base, unsigned long e);

// ---------------------------------------------------------------------------
// Dyadic rationals m * 2^e

class Dyadic {
public:
    Dyadic() = default;
    Dyadic(Integer mantissa, long exponent);
    explicit Dyadic(long value) : Dyadic(Integer(value), 0) {}
    explicit Dyadic(const Integer& value) : Dyadic(value, 0) {}

    /// Nearest dyadic with at most `bits` significant bits in direction `dir`.
    static Dyadic from_rational(const Rational& q, unsigned bits, Rounding dir);
    /// a / b rounded to `bits` significant bits in direction `dir`.
    static Dyadic quotient(const Dyadic& a, const Dyadic& b, unsigned bits, Rounding dir);

    const Integer& mantissa() const noexcept { return mant_; }
    long exponent() const noexcept { return exp_; }
    int sign() const { return sgn(mant_); }
    bool is_zero() const { return mant_ == 0; }
    bool is_integer() const { return exp_ >= 0 || mant_ == 0; }

    Rational to_rational() const;
    double to_double() const;
    Integer floor() const;
    Integer ceil() const;
    /// floor(log2 |x|); requires x != 0.
    long log2_floor() const;

    Dyadic rounded(unsigned bits, Rounding dir) const;
    /// x * 2^shift, exact.
    Dyadic scaled(long shift) const;
    Dyadic abs() const;

    /// Scientific decimal with `digits` significant digits, rounded in `dir`.
    std::string to_decimal(int digits, Rounding dir) const;

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a);
    friend bool operator==(const Dyadic& a, const Dyadic& b);
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

private:
    void normalize();

    Integer mant_{0};
    long exp_ = 0;
};

/// Scientific decimal form of an exact rational, rounded in `dir`.
std::string format_decimal(const Rational& value, int digits, Rounding dir);
/// Parses the output of format_decimal (or any plain decimal) into an exact rational.
Rational parse_decimal(std::string_view text);

// ---------------------------------------------------------------------------
// Intervals

class DyadicInterval {
public:
    DyadicInterval() : DyadicInterval(Dyadic(), Dyadic(), 64) {}
    DyadicInterval(Dyadic lo, Dyadic hi, unsigned precision);

    static DyadicInterval point(const Dyadic& x, unsigned precision);
    /// Outward-rounded enclosure of an exact rational.
    static DyadicInterval enclose(const Rational& q, unsigned precision);
    static DyadicInterval enclose(const Integer& n, unsigned precision) {
        return enclose(Rational(n), precision);
    }
    /// Smallest interval containing both.
    static DyadicInterval hull(const DyadicInterval& a, const DyadicInterval& b);

    const Dyadic& lo() const noexcept { return lo_; }
    const Dyadic& hi() const noexcept { return hi_; }
    unsigned precision() const noexcept { return precision_; }

    Dyadic width() const { return hi_ - lo_; }
    bool is_point() const { return lo_ == hi_; }
    bool contains(const Rational& q) const;
    bool contains(const DyadicInterval& other) const;
    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

    /// Every element of *this is strictly below every element of other.
    bool certainly_less(const DyadicInterval& other) const { return hi_ < other.lo_; }
    bool certainly_greater(const DyadicInterval& other) const { return lo_ > other.hi_; }
    bool certainly_positive() const { return lo_.sign() > 0; }

    /// Same enclosure, endpoints rounded outward to `bits`.
    DyadicInterval rounded(unsigned bits) const;
    DyadicInterval with_precision(unsigned bits) const { return rounded(bits); }
    DyadicInterval scaled(long shift) const;

    friend DyadicInterval operator+(const DyadicInterval& a, const DyadicInterval& b);
    friend DyadicInterval operator-(const DyadicInterval& a, const DyadicInterval& b);
    friend DyadicInterval operator*(const DyadicInterval& a, const DyadicInterval& b);
    friend DyadicInterval operator/(const DyadicInterval& a, const DyadicInterval& b);
    friend DyadicInterval operator-(const DyadicInterval& a);

private:
    Dyadic lo_;
    Dyadic hi_;
    unsigned precision_;
};

DyadicInterval operator+(const DyadicInterval& a, const Rational& b);
DyadicInterval operator*(const DyadicInterval& a, const Rational& b);
DyadicInterval operator*(const Rational& a, const DyadicInterval& b);

/// Enclosure of {ln t : t in x}. Throws std::domain_error unless x.lo > 0.
DyadicInterval interval_ln(const DyadicInterval& x);
/// Enclosure of {exp t : t in x}.
DyadicInterval interval_exp(const DyadicInterval& x);
/// Enclosure of {t^s : t in x, s in e}; point-integer exponents use binary powering.
/// Throws std::domain_error unless x.lo > 0.
DyadicInterval interval_pow(const DyadicInterval& x, const DyadicInterval& e);
/// Enclosure of {t^n : t in x} by binary powering; n may be negative if 0 is not in x.
DyadicInterval pow_int(const DyadicInterval& x, long n);
/// Enclosure of r^{1/k} with relative width at most 2^-precision. Endpoints are
/// certified with rat_cmp_kth_root; perfect powers give a point interval.
DyadicInterval kth_root_interval(const Rational& r, unsigned long k, unsigned precision);
/// Enclosure of {sqrt t : t in x}; requires x.lo >= 0.
DyadicInterval interval_sqrt(const DyadicInterval& x);
/// Enclosure of ln 2.
DyadicInterval ln2(unsigned precision);

// ---------------------------------------------------------------------------
// Precision escalation

struct PrecisionPolicy {
    unsigned start_bits = 128;
    unsigned cap_bits = 4096;
};

template <typename T>
struct Escalated {
    T value;
    unsigned bits;
};

/// Runs attempt(bits) at start_bits, doubling until it yields a value or the
/// cap is reached; then throws UndecidableError naming `what`.
/// `attempt` returns std::optional<T>.
template <typename Attempt>
auto escalate(const PrecisionPolicy& policy, std::string_view what, Attempt&& attempt)
    -> Escalated<typename std::invoke_result_t<Attempt&, unsigned>::value_type> {
    unsigned bits = std::max(1u, std::min(policy.start_bits, policy.cap_bits));
    for (;;) {
        if (auto result = attempt(bits)) return {std::move(*result), bits};
        if (bits >= policy.cap_bits) throw UndecidableError(std::string(what), bits);
        bits = std::min(bits * 2, policy.cap_bits);
    }
}

}  // namespace dioph
