#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "dioph/elimination.hpp"

using namespace dioph;

namespace {

Rational dec(const char* s) { return parse_decimal(s); }

}  // namespace

TEST_CASE("in_S membership") {
    CHECK(in_S(7, 132479));
    CHECK_FALSE(in_S(7, 132480));
    CHECK(in_S(8, 2559));
    CHECK_FALSE(in_S(8, 2560));
    CHECK_FALSE(in_S(9, Integer("1000000000")));
    CHECK_FALSE(in_S(9, 512));
}

TEST_CASE("elimination chain anchors") {
    struct Anchor {
        unsigned long k;
        unsigned long d_min;
        const char* lhs_above;
        const char* rhs_below;
    };
    for (Anchor a : {Anchor{10, 1024, "63", "7"}, Anchor{9, 512, "42", "3"}, Anchor{8, 2560, "9", "9"},
                     Anchor{7, 132480, "7.218", "7.213"}}) {
        auto chain = eliminate_chain(a.k, Integer(a.d_min));
        INFO("k = " << a.k);
        CHECK(chain.contradiction);
        CHECK(chain.decided);
        CHECK(chain.lhs.certainly_greater(chain.rhs));
        CHECK(chain.lhs.lo().to_rational() > dec(a.lhs_above));
        CHECK(chain.rhs.hi().to_rational() < dec(a.rhs_below));
        CHECK(chain.exponent.certainly_positive());
    }
}

TEST_CASE("chain exponents match the displayed decimals") {
    // k - 2 lambda - 2 >= .6, .6, .28, .1676 with the rounded lambda bounds.
    CHECK(eliminate_chain(10, 1024).exponent.lo().to_rational() > dec("0.6"));
    CHECK(eliminate_chain(9, 512).exponent.lo().to_rational() > dec("0.6"));
    CHECK(eliminate_chain(8, 2560).exponent.lo().to_rational() > dec("0.28"));
    auto k7 = eliminate_chain(7, 132480);
    CHECK(k7.exponent.lo().to_rational() > dec("0.1676"));
    CHECK(k7.exponent.hi().to_rational() < dec("0.1677"));
}

TEST_CASE("chains get easier as the threshold grows") {
    for (unsigned long k : {7ul, 8ul, 9ul}) {
        Integer d = k == 7 ? Integer(132480) : k == 8 ? Integer(2560) : Integer(512);
        auto prev = evaluate_chain(k, d, 256);
        for (int step = 0; step < 6; ++step) {
            d = d * 3;
            auto cur = evaluate_chain(k, d, 256);
            INFO("k = " << k << " d = " << d);
            CHECK(cur.lhs.lo() > prev.lhs.lo());
            CHECK(cur.rhs.hi() < prev.rhs.hi());
            prev = cur;
        }
    }
}

TEST_CASE("the k >= 10 regime holds pointwise beyond k = 10") {
    for (unsigned long k = 10; k <= 40; ++k) {
        CHECK_MESSAGE(eliminate_chain(k, pow(Integer(2), k)).contradiction, "k = " << k);
    }
}

TEST_CASE("below the S thresholds the chains do not close") {
    // Just inside S the inequality is not contradicted, which is why S is needed.
    auto k7 = eliminate_chain(7, 100000);
    CHECK(k7.decided);
    CHECK_FALSE(k7.contradiction);
    auto k8 = eliminate_chain(8, 2000);
    CHECK(k8.decided);
    CHECK_FALSE(k8.contradiction);
}

TEST_CASE("precision cap too small is undecidable, never a pass") {
    CHECK_THROWS_AS(eliminate_chain(7, 132480, PrecisionPolicy{8, 8}), UndecidableError);
    // The k = 8 gap (about 9.26 against 8.88) survives even 8-bit rounding.
    auto k8 = eliminate_chain(8, 2560, PrecisionPolicy{8, 8});
    CHECK(k8.contradiction);
    CHECK_THROWS_AS(evaluate_chain(7, 100, 64), std::invalid_argument);
}

TEST_CASE("enumerate_cases matches an independent enumeration") {
    auto cases = enumerate_cases();
    // Independent oracle: brute-force over every a, c below the limits.
    std::vector<CaseParams> brute;
    for (unsigned long k : {7ul, 8ul}) {
        unsigned long limit = k == 7 ? 132480 : 2560;
        for (unsigned long x = 2; x < 10; ++x) {
            for (unsigned long a = 1; a < 400; ++a) {
                for (unsigned long c = 1; c < limit; ++c) {
                    Integer d = Integer(a) * a * c * pow(Integer(x), k);
                    if (d >= limit) break;
                    brute.push_back({k, a, c, x});
                }
            }
        }
    }
    std::sort(brute.begin(), brute.end());
    CHECK(cases == brute);

    CHECK(cases.size() == 1767);
    CHECK(std::count_if(cases.begin(), cases.end(), [](const CaseParams& c) { return c.k == 7; }) == 1755);
    CHECK(std::count_if(cases.begin(), cases.end(), [](const CaseParams& c) { return c.k == 8; }) == 12);
    CHECK(std::is_sorted(cases.begin(), cases.end()));

    CHECK(std::find(cases.begin(), cases.end(), CaseParams{7, 1, 1, 2}) != cases.end());
    CHECK(std::find(cases.begin(), cases.end(), CaseParams{8, 1, 1, 3}) == cases.end());
    CHECK(std::find(cases.begin(), cases.end(), CaseParams{8, 3, 1, 2}) != cases.end());
    for (const auto& c : cases) {
        CHECK(in_S(c.k, c.D()));
        CHECK(c.D() >= pow(Integer(2), c.k));
    }
}
