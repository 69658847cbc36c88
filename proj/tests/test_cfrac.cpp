#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "dioph/cfrac.hpp"
#include "dioph/elimination.hpp"
#include "support/mpfr_oracle.hpp"

using namespace dioph;

namespace {

Rational frac(long n, long d) {
    Rational q(n, d);
    q.canonicalize();
    return q;
}

// |theta - p/q| < bound, decided exactly: theta^k vs (p/q +- bound)^k.
bool within(const Rational& r, unsigned long k, const Rational& center, const Rational& radius) {
    Rational lo = center - radius, hi = center + radius;
    bool above_lo = lo <= 0 || rat_cmp_kth_root(lo, r, k) == std::strong_ordering::less;
    bool below_hi = rat_cmp_kth_root(hi, r, k) == std::strong_ordering::greater;
    return above_lo && below_hi;
}

// |q theta - p| as an interval, from a fine enclosure of theta.
DyadicInterval distance(const DyadicInterval& theta, const Integer& p, const Integer& q) {
    const unsigned w = theta.precision() + 64;
    DyadicInterval v = DyadicInterval::enclose(q, w) * theta - DyadicInterval::enclose(p, w);
    return v.lo().sign() < 0 ? -v : v;
}

}  // namespace

TEST_CASE("sign_linear") {
    // theta = 2^{1/2}
    CHECK(sign_linear(1, -1, 2, 2) == 1);
    CHECK(sign_linear(1, -2, 2, 2) == -1);
    CHECK(sign_linear(-3, 5, 2, 2) == 1);   // 5 - 3 sqrt 2 > 0
    CHECK(sign_linear(0, -4, 2, 2) == -1);
}

TEST_CASE("floor_homographic examples") {
    HomographicState identity{1, 0, 0, 1, frac(1, 128), 7};
    CHECK(floor_homographic(identity) == 0);  // (1/128)^{1/7} = 1/2 exactly
    HomographicState s{1, 0, 0, 1, frac(128, 127), 7};
    CHECK(floor_homographic(s) == 1);
    HomographicState half{1, 0, 0, 2, frac(128, 127), 7};
    CHECK(floor_homographic(half) == 0);

    HomographicState degenerate{2, 4, 1, 2, 2, 2};
    CHECK_THROWS_AS(floor_homographic(degenerate), DegenerateStateError);
    HomographicState pole{1, 0, 1, -2, 4, 2};  // sqrt 4 - 2 = 0
    CHECK_THROWS_AS(floor_homographic(pole), DegenerateStateError);
}

TEST_CASE("cf_expand on a rational root terminates") {
    auto recs = cf_expand(frac(1, 128), 7, 10);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].quotient == 0);
    CHECK(recs[1].quotient == 2);
    CHECK(recs[0].p == 0);
    CHECK(recs[0].q == 1);
    CHECK(recs[1].p == 1);
    CHECK(recs[1].q == 2);
    ContinuedFraction cf(frac(1, 128), 7);
    CHECK(cf.is_rational());
    CHECK(cf.at(2) == nullptr);
    CHECK(cf.terminated());
}

TEST_CASE("alpha/x for (7,1,1,2)") {
    CaseParams c{7, 1, 1, 2};
    CHECK(c.N() == 127);
    auto recs = cf_expand(c, 1000);
    REQUIRE(recs.size() >= 2);
    CHECK(recs[0].quotient == 0);
    CHECK(recs[1].quotient == 1);
    CHECK(recs.back().q > 1000);
    for (std::size_t i = 0; i + 1 < recs.size(); ++i) CHECK(recs[i].q <= 1000);
}

TEST_CASE("sqrt 2 and known expansions") {
    auto recs = cf_expand(Rational(2), 2, Integer(1) << 60);
    CHECK(recs[0].quotient == 1);
    for (std::size_t i = 1; i < recs.size(); ++i) CHECK(recs[i].quotient == 2);
    // 2^{1/3} = [1; 3, 1, 5, 1, 1, 4, 1, 1, 8, 1, 14, ...]
    const int expected[] = {1, 3, 1, 5, 1, 1, 4, 1, 1, 8, 1, 14, 1, 10, 2, 1, 4, 12, 2, 3};
    ContinuedFraction cbrt2(Rational(2), 3);
    for (std::size_t i = 0; i < std::size(expected); ++i) CHECK(cbrt2.at(i)->quotient == expected[i]);
}

TEST_CASE("quotients agree with an MPFR expansion") {
    std::mt19937_64 rng(20261019);
    std::vector<std::pair<Rational, unsigned long>> inputs;
    for (const auto& c : {CaseParams{7, 1, 1, 2}, CaseParams{7, 3, 5, 2}, CaseParams{8, 1, 1, 2},
                          CaseParams{8, 3, 1, 2}, CaseParams{7, 1, 1, 5}, CaseParams{7, 1, 30, 3}}) {
        inputs.emplace_back(c.radicand(), c.k);
    }
    for (int i = 0; i < 10; ++i) {
        long n = static_cast<long>(rng() % 100000) + 2, d = static_cast<long>(rng() % 1000) + 1;
        unsigned long k = rng() % 9 + 2;
        Rational r = frac(n, d);
        if (is_perfect_kth_power(r, k, nullptr)) continue;
        inputs.emplace_back(r, k);
    }
    for (const auto& [r, k] : inputs) {
        auto oracle = oracle_mpfr::cf_quotients(r, k, 40);
        ContinuedFraction cf(r, k);
        for (std::size_t i = 0; i < oracle.size(); ++i) {
            const ConvergentRecord* rec = cf.at(i);
            REQUIRE(rec);
            CHECK_MESSAGE(rec->quotient == oracle[i], "r = " << r << " k = " << k << " i = " << i);
        }
    }
}

TEST_CASE("convergent properties") {
    for (const auto& c : {CaseParams{7, 1, 1, 2}, CaseParams{7, 2, 3, 3}, CaseParams{8, 1, 9, 2}}) {
        Rational r = c.radicand();
        ContinuedFraction cf(r, c.k);
        REQUIRE(cf.at(30));
        const auto& recs = cf.records();
        DyadicInterval theta = kth_root_interval(r, c.k, 256);
        for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
            const auto& a = recs[i];
            const auto& b = recs[i + 1];
            INFO("case k=" << c.k << " a=" << c.a << " c=" << c.c << " x=" << c.x << " i=" << i);
            // |theta - p_i/q_i| < 1/(q_i q_{i+1})
            CHECK(within(r, c.k, Rational(a.p, a.q), Rational(Integer(1), a.q * b.q)));
            // p_{i+1} q_i - p_i q_{i+1} = (-1)^i
            CHECK(b.p * a.q - a.p * b.q == (i % 2 == 0 ? 1 : -1));
            CHECK(gcd(a.p, a.q) == 1);
            // even convergents below theta, odd above
            auto side = rat_cmp_kth_root(Rational(a.p, a.q), r, c.k);
            CHECK(side == (i % 2 == 0 ? std::strong_ordering::less : std::strong_ordering::greater));
            if (i >= 1) {
                const auto& z = recs[i - 1];
                CHECK(b.p == b.quotient * a.p + z.p);
                CHECK(b.q == b.quotient * a.q + z.q);
            }
        }
        // Best approximation: no q < q_{i+1} beats |q_i theta - p_i|.
        for (std::size_t i = 1; i <= 6; ++i) {
            DyadicInterval best = distance(theta, recs[i].p, recs[i].q);
            unsigned long q_limit = recs[i + 1].q.get_ui();
            if (q_limit > 50000) q_limit = 50000;
            for (unsigned long q = 1; q < q_limit; ++q) {
                if (q == recs[i].q) continue;
                DyadicInterval qt = DyadicInterval::enclose(Integer(q), 320) * theta;
                Integer p = qt.lo().floor();
                DyadicInterval d0 = distance(theta, p, Integer(q));
                DyadicInterval d1 = distance(theta, p + 1, Integer(q));
                bool ok = d0.certainly_greater(best) && d1.certainly_greater(best);
                if (!ok) {
                    CHECK_MESSAGE(ok, "best approximation fails at q = " << q);
                    break;
                }
            }
        }
    }
}

TEST_CASE("expansion does not depend on the seed precision") {
    CaseParams c{7, 1, 3, 2};
    Rational r = c.radicand();
    ContinuedFraction cf(r, c.k);
    REQUIRE(cf.at(25));
    HomographicState s{1, 0, 0, 1, r, c.k};
    for (unsigned bits : {8u, 64u, 1024u}) {
        DyadicInterval seed = kth_root_interval(r, c.k, bits);
        HomographicState cur = s;
        for (std::size_t i = 0; i <= 25; ++i) {
            Integer a = floor_homographic(cur, &seed);
            CHECK(a == cf.records()[i].quotient);
            cur = HomographicState{cur.C, cur.D, cur.A - a * cur.C, cur.B - a * cur.D, r, c.k};
        }
    }
}

TEST_CASE("c_constant") {
    CaseParams c{7, 1, 1, 2};
    auto C = c_constant(c, 128);
    // C^7 = 126/128
    CHECK(C.hi() < Dyadic(1));
    CHECK(rat_cmp_kth_root(C.lo().to_rational(), frac(126, 128), 7) == std::strong_ordering::less);
    CHECK(rat_cmp_kth_root(C.hi().to_rational(), frac(126, 128), 7) == std::strong_ordering::greater);
}

TEST_CASE("qj_bound") {
    CaseParams c{7, 1, 1, 2};
    Integer B = qj_bound(c);
    CHECK(B >= 1);
    Integer prev = qj_bound(c, 64);
    for (unsigned bits : {128u, 256u, 512u}) {
        Integer cur = qj_bound(c, bits);
        CHECK(cur <= prev);
        prev = cur;
    }
    // lambda straddling k/2 cannot be certified
    DyadicInterval straddle(Dyadic(3), Dyadic(4), 64);
    CHECK_THROWS_AS(qj_bound_enclosure(c, straddle, 64), UndecidableError);
    DyadicInterval too_big = DyadicInterval::point(Dyadic(4), 64);
    CHECK_THROWS_AS(qj_bound_enclosure(c, too_big, 64), UndecidableError);
}

TEST_CASE("aj1 lower bound") {
    CaseParams c{7, 1, 1, 2};
    Rational L = aj1_lower_bound(c);
    CHECK(L > 0);
    CHECK(L > 22000);
    CHECK(L < 24000);
    auto enc = aj1_bound_enclosure(c, 256);
    CHECK(enc.width().to_rational() < Rational(Integer(1), Integer(1) << 200));
    Rational prev = aj1_lower_bound(c, 64);
    for (unsigned bits : {128u, 256u, 512u}) {
        Rational cur = aj1_lower_bound(c, bits);
        CHECK(cur >= prev);
        prev = cur;
    }
    CHECK_THROWS_AS(aj1_bound_enclosure(CaseParams{6, 1, 1, 2}, 64), std::invalid_argument);
}

TEST_CASE("verify_case eliminates (7,1,1,2)") {
    auto cert = verify_case(CaseParams{7, 1, 1, 2});
    CHECK(cert.eliminated);
    CHECK(cert.N == 127);
    CHECK((cert.reason == CaseReason::no_admissible_j || cert.reason == CaseReason::all_j_contradicted));
    for (const auto& cand : cert.candidates) {
        CHECK(cand.J % 2 == 0);
        CHECK(cand.J >= 2);
        CHECK(cand.q_J <= cert.q_cap);
        CHECK(cand.status == CandidateStatus::contradicted);
    }
    CHECK_THROWS_AS(verify_case(CaseParams{7, 1, 1, 6}), std::invalid_argument);
}

TEST_CASE("all k = 8 cases are eliminated") {
    std::size_t count = 0;
    for (const auto& c : enumerate_cases()) {
        if (c.k != 8) continue;
        ++count;
        auto cert = verify_case(c);
        CHECK_MESSAGE(cert.eliminated, "a=" << c.a << " c=" << c.c << " x=" << c.x);
    }
    CHECK(count == 12);
}

TEST_CASE("a zero bound yields a survivor") {
    // Every even J with q_J <= q_cap then survives; the check is not vacuous.
    VerifyCaseOptions opts;
    opts.lower_bound_override = Rational(0);
    bool found = false;
    for (const auto& c : {CaseParams{7, 1, 1, 2}, CaseParams{7, 1, 2, 2}, CaseParams{8, 1, 1, 2}}) {
        auto cert = verify_case(c, opts);
        if (cert.candidates.empty()) continue;
        found = true;
        CHECK(cert.reason == CaseReason::survivor);
        CHECK_FALSE(cert.eliminated);
    }
    CHECK(found);
}

TEST_CASE("an 8-bit cap never reports elimination it cannot back") {
    auto cert = verify_case(CaseParams{7, 1, 1, 2}, VerifyCaseOptions{PrecisionPolicy{8, 8}, std::nullopt});
    if (!cert.eliminated) CHECK(cert.reason == CaseReason::undecidable);
    CHECK(cert.precision_bits == 8);
}

TEST_CASE("reason strings round-trip") {
    for (CaseReason r : {CaseReason::no_admissible_j, CaseReason::all_j_contradicted, CaseReason::survivor,
                         CaseReason::undecidable}) {
        CHECK(case_reason_from_string(to_string(r)) == r);
    }
    CHECK(to_string(CaseReason::survivor) == "FAILURE-survivor");
    CHECK_THROWS_AS(case_reason_from_string("nope"), std::invalid_argument);
}
