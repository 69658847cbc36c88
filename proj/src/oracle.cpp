#include "dioph/oracle.hpp"

namespace dioph {

namespace {

Integer I(long v) { return Integer(v); }

Integer power(long base, long k) { return pow(Integer(base), static_cast<unsigned long>(k)); }

void require_valid(const IntRange& r, const char* name) {
    if (r.empty()) throw std::invalid_argument(std::string("search range for ") + name + " is empty");
}

}  // namespace

bool satisfies_equation(const SolutionTuple& t) {
    Integer lhs = (I(t.a) * t.a * t.c * power(t.x, t.k) - 1) * (I(t.b) * t.b * t.c * power(t.y, t.k) - 1);
    Integer mid = I(t.a) * t.b * t.c * power(t.z, t.k) - 1;
    return lhs == mid * mid;
}

bool satisfies_equation_expanded(const SolutionTuple& t) {
    Integer abc = I(t.a) * t.b * t.c;
    Integer xk = power(t.x, t.k), yk = power(t.y, t.k), zk = power(t.z, t.k);
    Integer lhs = abc * abc * xk * yk - I(t.a) * t.a * t.c * xk - I(t.b) * t.b * t.c * yk + 1;
    Integer rhs = abc * abc * zk * zk - 2 * abc * zk + 1;
    return lhs == rhs;
}

bool is_symmetric(const SolutionTuple& t) {
    return I(t.a) * t.a * power(t.x, t.k) == I(t.b) * t.b * power(t.y, t.k);
}

std::vector<SolutionTuple> search_solutions(const SearchRange& range, bool require_neq, bool explore) {
    require_valid(range.k, "k");
    require_valid(range.a, "a");
    require_valid(range.b, "b");
    require_valid(range.c, "c");
    require_valid(range.x, "x");
    require_valid(range.y, "y");
    require_valid(range.z, "z");
    if (!explore) {
        if (range.k.lo < 7) throw std::invalid_argument("theorem mode needs k >= 7");
        if (range.a.lo < 1 || range.b.lo < 1 || range.c.lo < 1)
            throw std::invalid_argument("theorem mode needs a, b, c >= 1");
        if (range.x.lo < 2 || range.y.lo < 2 || range.z.lo < 2)
            throw std::invalid_argument("theorem mode needs x, y, z >= 2");
    } else if (range.k.lo < 1 || range.a.lo < 1 || range.b.lo < 1 || range.c.lo < 1 || range.x.lo < 1 ||
               range.y.lo < 1 || range.z.lo < 1) {
        throw std::invalid_argument("search ranges must be positive");
    }

    std::vector<SolutionTuple> out;
    for (long k = range.k.lo; k <= range.k.hi; ++k)
    for (long a = range.a.lo; a <= range.a.hi; ++a)
    for (long b = range.b.lo; b <= range.b.hi; ++b)
    for (long c = range.c.lo; c <= range.c.hi; ++c)
    for (long x = range.x.lo; x <= range.x.hi; ++x) {
        Integer A = I(a) * a * c * power(x, k);
        // modulo b the equation reads -(A - 1) = 1
        if (A % b != 0) continue;
        for (long y = range.y.lo; y <= range.y.hi; ++y) {
            Integer lhs = (A - 1) * (I(b) * b * c * power(y, k) - 1);
            for (long z = range.z.lo; z <= range.z.hi; ++z) {
                Integer mid = I(a) * b * c * power(z, k) - 1;
                if (lhs != mid * mid) continue;
                SolutionTuple t{k, a, b, c, x, y, z};
                if (require_neq && is_symmetric(t)) continue;
                out.push_back(t);
            }
        }
    }
    return out;
}

Integer squarefree_part(const Integer& n) {
    if (n < 1) throw std::invalid_argument("squarefree_part: n must be positive");
    Integer rest = n, part = 1;
    Integer limit = integer_kth_root_floor(n, 3);
    for (Integer p = 2; p <= limit && p * p <= rest; p += (p == 2 ? 1 : 2)) {
        unsigned count = 0;
        while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
            rest /= p;
            ++count;
        }
        if (count % 2 == 1) part *= p;
    }
    // rest now has at most two prime factors, both above the cube root (or rest is prime)
    if (rest > 1 && !mpz_perfect_square_p(rest.get_mpz_t())) part *= rest;
    return part;
}

UVWTriple uvw_decompose(const Integer& M, const Integer& N) {
    if (M < 1 || N < 1) throw std::invalid_argument("uvw_decompose: M and N must be positive");
    Integer product = M * N;
    if (!mpz_perfect_square_p(product.get_mpz_t())) throw NotASquareError("M * N is not a perfect square");
    Integer root;
    mpz_sqrt(root.get_mpz_t(), product.get_mpz_t());
    Integer g;
    mpz_gcd(g.get_mpz_t(), M.get_mpz_t(), N.get_mpz_t());
    Integer u = squarefree_part(g);
    Integer v2 = M / u, w2 = N / u;
    UVWTriple out{u, 0, 0};
    mpz_sqrt(out.v.get_mpz_t(), v2.get_mpz_t());
    mpz_sqrt(out.w.get_mpz_t(), w2.get_mpz_t());
    if (out.u * out.v * out.v != M || out.u * out.w * out.w != N || out.u * out.v * out.w != root)
        throw std::logic_error("uvw_decompose: reconstruction failed");
    return out;
}

IdentityReport check_identities(const Integer& u, const Integer& v, const Integer& w) {
    if (u < 1 || v < 1) throw std::invalid_argument("check_identities: u, v must be positive");
    if (w <= v) throw std::invalid_argument("check_identities: need w > v");
    const Integer M = u * v * v, N = u * w * w, P = u * v * w;
    IdentityReport r{u, v, w, {}, {}, {}, {}, false, false, false, false};
    r.alpha_k = 1 + Rational(1) / Rational(M);
    r.beta_k = Rational((M + 1) * (N + 1)) / Rational((P + 1) * (P + 1));
    r.difference = r.alpha_k - r.beta_k;
    r.closed_form = Rational(M * (2 * P - M) + (2 * P + 1)) / Rational(M * (P + 1) * (P + 1));
    r.closed_form_holds = r.difference == r.closed_form;
    r.positive = r.difference > 0;
    r.below_two_alpha_over = r.difference < 2 * r.alpha_k / Rational(P + 1);
    r.sum_identity_holds = M + N == (M + 1) * (N + 1) - (P + 1) * (P + 1) + 2 * P;
    return r;
}

WlbReport check_wlb(const Integer& u, const Integer& v, const Integer& w, const Integer& a, const Integer& b,
                    const Integer& c, const Integer& z, unsigned long k) {
    if (u < 1 || v < 1 || w < 1 || a < 1 || b < 1 || c < 1 || z < 1 || k < 1)
        throw std::invalid_argument("check_wlb: arguments must be positive");
    if (u * v * w + 1 != a * b * c * pow(z, k)) throw InconsistentTupleError("u v w + 1 != a b c z^k");
    const Integer M = u * v * v;
    WlbReport r{};
    const Integer kk = Integer(k);
    r.w_lower_bound = w * w > pow(kk, k) * pow(u, k - 2) * pow(v, 2 * (k - 1));
    // z^{2k} x^{2k} a^6 c^4 > (k u v^2)^k, with x^{2k} = (M + 1)^2 / (a^4 c^2)
    Integer m1 = M + 1;
    r.z_lower_bound = pow(z, 2 * k) * m1 * m1 * a * a * c * c > pow(Integer(kk * M), k);
    Integer a2c = a * a * c;
    r.x_integral = m1 % a2c == 0 && is_perfect_kth_power(Rational(m1 / a2c), k);
    return r;
}

}  // namespace dioph
