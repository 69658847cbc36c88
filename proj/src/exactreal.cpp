#include "dioph/exactreal.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace dioph {

// ---------------------------------------------------------------------------
// Exact primitives

std::size_t bit_length(const Integer& n) {
    if (n == 0) return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

Integer pow(const Integer& base, unsigned long e) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

Rational pow(const Rational& base, unsigned long e) {
    Rational out(pow(Integer(base.get_num()), e), pow(Integer(base.get_den()), e));
    // num and den are coprime, so their powers are too.
    return out;
}

std::strong_ordering rat_cmp_kth_root(const Rational& q, const Rational& r, unsigned long k) {
    if (r <= 0) throw std::domain_error("rat_cmp_kth_root: radicand must be positive");
    if (k == 0) throw std::domain_error("rat_cmp_kth_root: k must be positive");
    if (q <= 0) return std::strong_ordering::less;
    // q^k <=> r  <=>  num(q)^k * den(r) <=> num(r) * den(q)^k
    Integer lhs = pow(Integer(q.get_num()), k) * r.get_den();
    Integer rhs = pow(Integer(q.get_den()), k) * r.get_num();
    int c = cmp(lhs, rhs);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Integer integer_kth_root_floor(const Integer& n, unsigned long k) {
    if (n < 0) throw std::domain_error("integer_kth_root_floor: negative argument");
    if (k == 0) throw std::domain_error("integer_kth_root_floor: k must be positive");
    Integer out;
    mpz_root(out.get_mpz_t(), n.get_mpz_t(), k);
    return out;
}

bool is_perfect_kth_power(const Rational& r, unsigned long k, Rational* root) {
    if (r <= 0) return false;
    Integer num_root, den_root;
    bool num_exact = mpz_root(num_root.get_mpz_t(), r.get_num_mpz_t(), k) != 0;
    bool den_exact = mpz_root(den_root.get_mpz_t(), r.get_den_mpz_t(), k) != 0;
    if (!(num_exact && den_exact)) return false;
    if (root) *root = Rational(num_root, den_root);
    return true;
}

// ---------------------------------------------------------------------------
// Dyadic

Dyadic::Dyadic(Integer mantissa, long exponent) : mant_(std::move(mantissa)), exp_(exponent) {
    normalize();
}

void Dyadic::normalize() {
    if (mant_ == 0) {
        exp_ = 0;
        return;
    }
    mp_bitcnt_t tz = mpz_scan1(mant_.get_mpz_t(), 0);
    if (tz > 0) {
        mpz_tdiv_q_2exp(mant_.get_mpz_t(), mant_.get_mpz_t(), tz);
        exp_ += static_cast<long>(tz);
    }
}

Dyadic Dyadic::from_rational(const Rational& q, unsigned bits, Rounding dir) {
    if (q == 0) return Dyadic();
    const Integer& num = q.get_num();
    const Integer& den = q.get_den();
    long shift = static_cast<long>(bits) + 2 -
                 (static_cast<long>(bit_length(num)) - static_cast<long>(bit_length(den)));
    Integer n = num, d = den;
    if (shift >= 0)
        n <<= static_cast<mp_bitcnt_t>(shift);
    else
        d <<= static_cast<mp_bitcnt_t>(-shift);
    Integer m;
    if (dir == Rounding::down)
        mpz_fdiv_q(m.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    else
        mpz_cdiv_q(m.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return Dyadic(std::move(m), -shift).rounded(bits, dir);
}

Dyadic Dyadic::quotient(const Dyadic& a, const Dyadic& b, unsigned bits, Rounding dir) {
    if (b.is_zero()) throw std::domain_error("Dyadic::quotient: division by zero");
    if (a.is_zero()) return Dyadic();
    long shift = static_cast<long>(bits) + 2 + static_cast<long>(bit_length(b.mant_)) -
                 static_cast<long>(bit_length(a.mant_));
    shift = std::max(shift, 0L);
    Integer n = a.mant_ << static_cast<mp_bitcnt_t>(shift);
    Integer m;
    if (dir == Rounding::down)
        mpz_fdiv_q(m.get_mpz_t(), n.get_mpz_t(), b.mant_.get_mpz_t());
    else
        mpz_cdiv_q(m.get_mpz_t(), n.get_mpz_t(), b.mant_.get_mpz_t());
    return Dyadic(std::move(m), a.exp_ - b.exp_ - shift).rounded(bits, dir);
}

Rational Dyadic::to_rational() const {
    Rational out(mant_);
    if (exp_ > 0) {
        mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(exp_));
    } else if (exp_ < 0) {
        mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(-exp_));
    }
    return out;
}

double Dyadic::to_double() const {
    if (is_zero()) return 0.0;
    std::size_t bl = bit_length(mant_);
    Integer top = mant_;
    long e = exp_;
    if (bl > 60) {
        top >>= static_cast<mp_bitcnt_t>(bl - 60);
        e += static_cast<long>(bl - 60);
    }
    return std::ldexp(top.get_d(), static_cast<int>(std::clamp(e, -100000L, 100000L)));
}

Integer Dyadic::floor() const {
    Integer out;
    if (exp_ >= 0) {
        mpz_mul_2exp(out.get_mpz_t(), mant_.get_mpz_t(), static_cast<mp_bitcnt_t>(exp_));
    } else {
        mpz_fdiv_q_2exp(out.get_mpz_t(), mant_.get_mpz_t(), static_cast<mp_bitcnt_t>(-exp_));
    }
    return out;
}

Integer Dyadic::ceil() const {
    Integer out;
    if (exp_ >= 0) {
        mpz_mul_2exp(out.get_mpz_t(), mant_.get_mpz_t(), static_cast<mp_bitcnt_t>(exp_));
    } else {
        mpz_cdiv_q_2exp(out.get_mpz_t(), mant_.get_mpz_t(), static_cast<mp_bitcnt_t>(-exp_));
    }
    return out;
}

long Dyadic::log2_floor() const {
    if (is_zero()) throw std::domain_error("Dyadic::log2_floor of zero");
    return static_cast<long>(bit_length(mant_)) - 1 + exp_;
}

Dyadic Dyadic::rounded(unsigned bits, Rounding dir) const {
    std::size_t bl = bit_length(mant_);
    if (bl <= bits) return *this;
    mp_bitcnt_t sh = bl - bits;
    Integer m;
    if (dir == Rounding::down)
        mpz_fdiv_q_2exp(m.get_mpz_t(), mant_.get_mpz_t(), sh);
    else
        mpz_cdiv_q_2exp(m.get_mpz_t(), mant_.get_mpz_t(), sh);
    return Dyadic(std::move(m), exp_ + static_cast<long>(sh));
}

Dyadic Dyadic::scaled(long shift) const {
    if (is_zero()) return *this;
    Dyadic out = *this;
    out.exp_ += shift;
    return out;
}

Dyadic Dyadic::abs() const {
    Dyadic out = *this;
    out.mant_ = ::abs(mant_);
    return out;
}

std::string Dyadic::to_decimal(int digits, Rounding dir) const {
    return format_decimal(to_rational(), digits, dir);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    long e = std::min(a.exp_, b.exp_);
    Integer m = (a.mant_ << static_cast<mp_bitcnt_t>(a.exp_ - e)) +
                (b.mant_ << static_cast<mp_bitcnt_t>(b.exp_ - e));
    return Dyadic(std::move(m), e);
}

Dyadic operator-(const Dyadic& a) {
    Dyadic out = a;
    out.mant_ = -out.mant_;
    return out;
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(a.mant_ * b.mant_, a.exp_ + b.exp_);
}

bool operator==(const Dyadic& a, const Dyadic& b) {
    // Both sides are normalized.
    return a.exp_ == b.exp_ && a.mant_ == b.mant_;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa <=> sb;
    if (sa == 0) return std::strong_ordering::equal;
    // Same sign: compare magnitudes by binary exponent first.
    long la = a.log2_floor(), lb = b.log2_floor();
    if (la != lb) return sa > 0 ? (la <=> lb) : (lb <=> la);
    int s = (a - b).sign();
    return s <=> 0;
}

// ---------------------------------------------------------------------------
// Decimal formatting

namespace {

Rational pow10(long e) {
    Integer p = pow(Integer(10), static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? Rational(Integer(1), p) : Rational(p);
}

}  // namespace

std::string format_decimal(const Rational& value, int digits, Rounding dir) {
    if (digits < 1) throw std::invalid_argument("format_decimal: digits must be positive");
    if (value == 0) return "0";
    bool negative = value < 0;
    Rational mag = negative ? Rational(-value) : value;
    // Rounding the magnitude up moves a negative value down.
    bool magnitude_up = (dir == Rounding::up) != negative;

    long d = static_cast<long>(
        std::floor((static_cast<double>(bit_length(mag.get_num())) -
                    static_cast<double>(bit_length(mag.get_den()))) *
                   0.30102999566398120));
    while (mag >= pow10(d + 1)) ++d;
    while (mag < pow10(d)) --d;

    Rational scaled = mag * pow10(digits - 1 - d);
    Integer n;
    if (magnitude_up)
        mpz_cdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    else
        mpz_fdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    if (n == pow(Integer(10), static_cast<unsigned long>(digits))) {
        n /= 10;
        ++d;
    }
    std::string s = n.get_str();
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    std::string out = negative ? "-" : "";
    out += s[0];
    if (s.size() > 1) {
        out += '.';
        out.append(s, 1, std::string::npos);
    }
    out += 'e';
    out += std::to_string(d);
    return out;
}

Rational parse_decimal(std::string_view text) {
    auto fail = [&] { throw std::invalid_argument("parse_decimal: malformed '" + std::string(text) + "'"); };
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
    std::string digits;
    long frac = 0;
    bool seen_point = false, seen_digit = false;
    for (; i < text.size(); ++i) {
        char ch = text[i];
        if (ch >= '0' && ch <= '9') {
            digits += ch;
            seen_digit = true;
            if (seen_point) ++frac;
        } else if (ch == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) fail();
    long exp10 = 0;
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') fail();
        ++i;
        std::string e(text.substr(i));
        if (e.empty()) fail();
        std::size_t used = 0;
        try {
            exp10 = std::stol(e, &used);
        } catch (const std::exception&) {
            fail();
        }
        if (used != e.size()) fail();
    }
    Rational out(Integer(digits, 10));
    out *= pow10(exp10 - frac);
    out.canonicalize();
    return negative ? Rational(-out) : out;
}

// ---------------------------------------------------------------------------
// DyadicInterval

DyadicInterval::DyadicInterval(Dyadic lo, Dyadic hi, unsigned precision)
    : lo_(std::move(lo)), hi_(std::move(hi)), precision_(precision) {
    if (precision_ == 0) throw std::invalid_argument("DyadicInterval: precision must be positive");
    if (lo_ > hi_) throw std::invalid_argument("DyadicInterval: lo > hi");
}

DyadicInterval DyadicInterval::point(const Dyadic& x, unsigned precision) {
    return DyadicInterval(x.rounded(precision, Rounding::down), x.rounded(precision, Rounding::up),
                          precision);
}

DyadicInterval DyadicInterval::enclose(const Rational& q, unsigned precision) {
    return DyadicInterval(Dyadic::from_rational(q, precision, Rounding::down),
                          Dyadic::from_rational(q, precision, Rounding::up), precision);
}

DyadicInterval DyadicInterval::hull(const DyadicInterval& a, const DyadicInterval& b) {
    return DyadicInterval(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_),
                          std::max(a.precision_, b.precision_));
}

bool DyadicInterval::contains(const Rational& q) const {
    return lo_.to_rational() <= q && q <= hi_.to_rational();
}

bool DyadicInterval::contains(const DyadicInterval& other) const {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
}

DyadicInterval DyadicInterval::rounded(unsigned bits) const {
    return DyadicInterval(lo_.rounded(bits, Rounding::down), hi_.rounded(bits, Rounding::up), bits);
}

DyadicInterval DyadicInterval::scaled(long shift) const {
    return DyadicInterval(lo_.scaled(shift), hi_.scaled(shift), precision_);
}

namespace {

DyadicInterval make_rounded(const Dyadic& lo, const Dyadic& hi, unsigned bits) {
    return DyadicInterval(lo.rounded(bits, Rounding::down), hi.rounded(bits, Rounding::up), bits);
}

}  // namespace

DyadicInterval operator+(const DyadicInterval& a, const DyadicInterval& b) {
    return make_rounded(a.lo_ + b.lo_, a.hi_ + b.hi_, std::max(a.precision_, b.precision_));
}

DyadicInterval operator-(const DyadicInterval& a) {
    return DyadicInterval(-a.hi_, -a.lo_, a.precision_);
}

DyadicInterval operator-(const DyadicInterval& a, const DyadicInterval& b) {
    return make_rounded(a.lo_ - b.hi_, a.hi_ - b.lo_, std::max(a.precision_, b.precision_));
}

DyadicInterval operator*(const DyadicInterval& a, const DyadicInterval& b) {
    unsigned bits = std::max(a.precision_, b.precision_);
    if (a.lo_.sign() >= 0 && b.lo_.sign() >= 0) return make_rounded(a.lo_ * b.lo_, a.hi_ * b.hi_, bits);
    Dyadic p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
    auto [mn, mx] = std::minmax_element(std::begin(p), std::end(p));
    return make_rounded(*mn, *mx, bits);
}

DyadicInterval operator/(const DyadicInterval& a, const DyadicInterval& b) {
    if (b.contains_zero()) throw std::domain_error("interval division: divisor contains zero");
    unsigned bits = std::max(a.precision_, b.precision_);
    const Dyadic* num[2] = {&a.lo_, &a.hi_};
    const Dyadic* den[2] = {&b.lo_, &b.hi_};
    std::optional<Dyadic> lo, hi;
    for (const Dyadic* n : num) {
        for (const Dyadic* d : den) {
            Dyadic down = Dyadic::quotient(*n, *d, bits, Rounding::down);
            Dyadic up = Dyadic::quotient(*n, *d, bits, Rounding::up);
            if (!lo || down < *lo) lo = down;
            if (!hi || up > *hi) hi = up;
        }
    }
    return DyadicInterval(*lo, *hi, bits);
}

DyadicInterval operator+(const DyadicInterval& a, const Rational& b) {
    return a + DyadicInterval::enclose(b, a.precision());
}

DyadicInterval operator*(const DyadicInterval& a, const Rational& b) {
    return a * DyadicInterval::enclose(b, a.precision());
}

DyadicInterval operator*(const Rational& a, const DyadicInterval& b) { return b * a; }

// ---------------------------------------------------------------------------
// Transcendental functions

namespace {

constexpr unsigned kGuardBits = 40;

// atanh(z) for an interval 0 <= z.lo <= z.hi < 1/2, absolute error below 2^-bits.
DyadicInterval atanh_series(const DyadicInterval& z, unsigned bits) {
    DyadicInterval z2 = z * z;
    DyadicInterval term = z;
    DyadicInterval sum = DyadicInterval::point(Dyadic(), bits);
    const Dyadic threshold(Integer(1), -static_cast<long>(bits));
    const Dyadic one_minus_z2 = Dyadic(1) - z2.hi();
    for (long i = 0;; ++i) {
        sum = sum + term / DyadicInterval::point(Dyadic(2 * i + 1), bits);
        term = term * z2;
        // Tail: sum_{j > i} z^{2j+1}/(2j+1) <= z^{2i+3} / ((2i+3)(1 - z^2)).
        Dyadic tail = Dyadic::quotient(term.hi(), Dyadic(2 * i + 3) * one_minus_z2, bits, Rounding::up);
        if (tail < threshold) {
            return sum + DyadicInterval(Dyadic(), tail, bits);
        }
    }
}

DyadicInterval compute_ln2(unsigned bits) {
    unsigned w = bits + kGuardBits;
    DyadicInterval third = DyadicInterval::enclose(Rational(1, 3), w);
    return atanh_series(third, w).scaled(1).rounded(bits);
}

DyadicInterval ln_point(const Dyadic& t, unsigned bits) {
    if (t.sign() <= 0) throw std::domain_error("interval_ln: argument must be positive");
    const long bl = static_cast<long>(bit_length(t.mantissa()));
    long j = bl - 1 + t.exponent();
    Dyadic y(t.mantissa(), -(bl - 1));  // y in [1, 2)
    if (Dyadic(3) * y > Dyadic(4)) {
        y = y.scaled(-1);
        ++j;
    }
    // y in [2/3, 4/3], so |z| <= 1/5 below.
    const unsigned w = bits + kGuardBits + static_cast<unsigned>(bit_length(Integer(j)));
    Dyadic num = y - Dyadic(1);
    Dyadic den = y + Dyadic(1);
    DyadicInterval series = DyadicInterval::point(Dyadic(), w);
    if (!num.is_zero()) {
        Dyadic mag = num.abs();
        DyadicInterval z(Dyadic::quotient(mag, den, w, Rounding::down),
                         Dyadic::quotient(mag, den, w, Rounding::up), w);
        series = atanh_series(z, w).scaled(1);
        if (num.sign() < 0) series = -series;
    }
    if (j != 0) series = series + ln2(w) * Rational(j);
    return series.rounded(bits);
}

DyadicInterval exp_point(const Dyadic& t, unsigned bits) {
    if (t.is_zero()) return DyadicInterval::point(Dyadic(1), bits);
    double td = t.to_double();
    if (!(std::fabs(td) < 1e12)) throw std::overflow_error("interval_exp: argument too large");
    long n = std::lround(td / 0.69314718055994530942);
    const unsigned extra = static_cast<unsigned>(bit_length(Integer(n))) + 16;
    const unsigned w = bits + kGuardBits + extra;
    constexpr long kHalvings = 12;

    DyadicInterval r = DyadicInterval::point(t, w + extra);
    if (n != 0) r = r - ln2(w + extra) * Rational(n);
    r = r.rounded(w).scaled(-kHalvings);

    const Dyadic r_mag = std::max(r.lo().abs(), r.hi().abs());
    const Dyadic threshold(Integer(1), -static_cast<long>(w));
    DyadicInterval sum = DyadicInterval::point(Dyadic(1), w);
    DyadicInterval term = sum;
    for (long i = 1;; ++i) {
        term = term * r / DyadicInterval::point(Dyadic(i), w);
        sum = sum + term;
        // Tail after term i: |r|^{i+1}/(i+1)! * 1/(1-|r|) <= 2 * |term| * |r| / (i+1).
        Dyadic next = Dyadic::quotient(std::max(term.lo().abs(), term.hi().abs()) * r_mag,
                                       Dyadic(i + 1), w, Rounding::up)
                          .scaled(1);
        if (next < threshold) {
            sum = sum + DyadicInterval(-next, next, w);
            break;
        }
    }
    for (long i = 0; i < kHalvings; ++i) sum = sum * sum;
    return sum.scaled(n).rounded(bits);
}

// a^n for a >= 0 with all roundings in direction dir.
Dyadic directed_pow(const Dyadic& a, unsigned long n, unsigned bits, Rounding dir) {
    Dyadic result(1);
    Dyadic base = a;
    while (n > 0) {
        if (n & 1UL) result = (result * base).rounded(bits, dir);
        n >>= 1;
        if (n > 0) base = (base * base).rounded(bits, dir);
    }
    return result;
}

}  // namespace

DyadicInterval ln2(unsigned precision) {
    static std::mutex mutex;
    static std::map<unsigned, DyadicInterval> cache;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(precision);
        if (it != cache.end()) return it->second;
    }
    DyadicInterval value = compute_ln2(precision);
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(precision, value);
    return value;
}

DyadicInterval interval_ln(const DyadicInterval& x) {
    if (x.lo().sign() <= 0) throw std::domain_error("interval_ln: interval must be strictly positive");
    unsigned bits = x.precision();
    DyadicInterval lo = ln_point(x.lo(), bits);
    if (x.is_point()) return lo;
    DyadicInterval hi = ln_point(x.hi(), bits);
    return DyadicInterval(lo.lo(), hi.hi(), bits);
}

DyadicInterval interval_exp(const DyadicInterval& x) {
    unsigned bits = x.precision();
    DyadicInterval lo = exp_point(x.lo(), bits);
    if (x.is_point()) return lo;
    DyadicInterval hi = exp_point(x.hi(), bits);
    return DyadicInterval(lo.lo(), hi.hi(), bits);
}

DyadicInterval pow_int(const DyadicInterval& x, long n) {
    unsigned bits = x.precision();
    if (n == 0) return DyadicInterval::point(Dyadic(1), bits);
    if (n < 0) {
        if (x.contains_zero()) throw std::domain_error("pow_int: negative power of interval containing zero");
        return DyadicInterval::point(Dyadic(1), bits) / pow_int(x, -n);
    }
    auto un = static_cast<unsigned long>(n);
    unsigned w = bits + 2 * static_cast<unsigned>(bit_length(Integer(un))) + 8;
    if (x.lo().sign() >= 0) {
        return DyadicInterval(directed_pow(x.lo(), un, w, Rounding::down),
                              directed_pow(x.hi(), un, w, Rounding::up), w)
            .rounded(bits);
    }
    if (x.hi().sign() <= 0) {
        DyadicInterval mag = pow_int(-x, n);
        return (un & 1UL) ? -mag : mag;
    }
    if (un & 1UL) {
        return DyadicInterval(-directed_pow(x.lo().abs(), un, w, Rounding::up),
                              directed_pow(x.hi(), un, w, Rounding::up), w)
            .rounded(bits);
    }
    Dyadic mag = std::max(x.lo().abs(), x.hi());
    return DyadicInterval(Dyadic(), directed_pow(mag, un, w, Rounding::up), w).rounded(bits);
}

DyadicInterval interval_pow(const DyadicInterval& x, const DyadicInterval& e) {
    if (x.lo().sign() <= 0) throw std::domain_error("interval_pow: base must be strictly positive");
    unsigned bits = std::max(x.precision(), e.precision());
    if (e.is_point() && e.lo().is_integer() && bit_length(e.lo().floor()) < 62) {
        return pow_int(x.with_precision(bits), e.lo().floor().get_si());
    }
    // The exponent is usually tiny, but ln x must be accurate relative to the product.
    DyadicInterval lx = interval_ln(x.with_precision(bits + 16));
    return interval_exp((e * lx).rounded(bits + 16)).rounded(bits);
}

DyadicInterval kth_root_interval(const Rational& r, unsigned long k, unsigned precision) {
    if (r <= 0) throw std::domain_error("kth_root_interval: radicand must be positive");
    if (k == 0) throw std::domain_error("kth_root_interval: k must be positive");
    Rational exact;
    if (is_perfect_kth_power(r, k, &exact)) {
        const Integer& den = exact.get_den();
        if (mpz_popcount(den.get_mpz_t()) == 1) {
            Dyadic d(Integer(exact.get_num()), -static_cast<long>(bit_length(den) - 1));
            return DyadicInterval(d, d, precision);
        }
        return DyadicInterval::enclose(exact, precision);
    }
    // floor(log2 r) >= lg, so r^{1/k} >= 2^{floor(lg/k)}.
    long lg = static_cast<long>(bit_length(r.get_num())) - static_cast<long>(bit_length(r.get_den())) - 1;
    long fl = lg >= 0 ? lg / static_cast<long>(k) : -((-lg + static_cast<long>(k) - 1) / static_cast<long>(k));
    long p = static_cast<long>(precision) - fl + 2;
    // m = floor((r * 2^{kp})^{1/k})
    Integer num = r.get_num(), den = r.get_den();
    long sh = static_cast<long>(k) * p;
    if (sh >= 0)
        num <<= static_cast<mp_bitcnt_t>(sh);
    else
        den <<= static_cast<mp_bitcnt_t>(-sh);
    Integer scaled;
    mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Integer m = integer_kth_root_floor(scaled, k);
    Dyadic lo(m, -p);
    Dyadic hi(m + 1, -p);
    if (rat_cmp_kth_root(lo.to_rational(), r, k) == std::strong_ordering::greater ||
        rat_cmp_kth_root(hi.to_rational(), r, k) != std::strong_ordering::greater) {
        throw std::logic_error("kth_root_interval: endpoint certification failed");
    }
    return DyadicInterval(lo, hi, precision);
}

DyadicInterval interval_sqrt(const DyadicInterval& x) {
    if (x.lo().sign() < 0) throw std::domain_error("interval_sqrt: negative argument");
    unsigned bits = x.precision();
    Dyadic lo = x.lo().is_zero() ? Dyadic() : kth_root_interval(x.lo().to_rational(), 2, bits).lo();
    Dyadic hi = x.hi().is_zero() ? Dyadic() : kth_root_interval(x.hi().to_rational(), 2, bits).hi();
    return DyadicInterval(lo, hi, bits);
}

}  // namespace dioph
