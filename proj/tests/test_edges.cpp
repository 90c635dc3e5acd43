#include <doctest.h>

#include "cram/errcurve.hpp"
#include "cram/matexp.hpp"
#include "cram/ratfun.hpp"
#include "support/espigot.hpp"
#include "support/testutil.hpp"

using namespace cram;

TEST_CASE("addition with operands far below the rounding horizon") {
    XReal big = XReal::parse("1.25e100", 40);
    XReal tiny = XReal::parse("7e-100", 40);
    CHECK((big + tiny) == big);
    CHECK((big - tiny) == big);
    CHECK((tiny + big) == big);
    CHECK((tiny - big) == big.neg());

    // just inside the horizon the small operand must still register
    XReal close = XReal::parse("1e62", 40);     // gap 38 < digits
    CHECK((big + close) > big);

    // exact cancellation
    CHECK((big - big).is_zero());
    XReal sum = tiny + tiny.neg();
    CHECK(sum.is_zero());
}

TEST_CASE("parse caps absurdly long literals with rounding") {
    std::string longlit = "1.";
    for (int i = 0; i < 400; ++i) longlit.push_back('3');
    longlit += "7";   // digit 402 forces no visible change after the cap
    XReal x = XReal::parse(longlit, 256);
    XReal third = XReal(4, 256) / XReal(3, 256);
    CHECK(testutil::agree_digits(x, third, 300) >= 254);

    // a longer-than-capacity all-nines integer rounds up to the next power
    std::string bigint(350, '9');
    XReal y = XReal::parse(bigint, 64);
    CHECK(y.mag10() == 350);
    CHECK(y == XReal::pow10(350, 64));
}

TEST_CASE("exp at the guard boundary and at the precision cap") {
    XReal top = cram::exp(XReal::parse("1e6", 40));
    CHECK(top.mag10() == 434294);   // e^(1e6) = 10^434294.48...

    XReal deep = cram::exp(XReal(-3, 256), 256);
    std::string e260 = oracle::e_digits(265);
    XReal e1 = XReal::parse("2." + e260.substr(1, 258) + "e0", 256);
    XReal cube = e1 * e1 * e1;
    CHECK(testutil::agree_digits(deep * cube, XReal(1, 256), 300) >= 252);
}

TEST_CASE("ln2 master constant is consistent with exp at high precision") {
    XReal l = XReal::ln2(200);
    XReal two = cram::exp(l, 200);
    CHECK(testutil::agree_digits(two, XReal(2, 200), 300) >= 197);
}

TEST_CASE("equioscillation resolution guard fires on unresolved extrema") {
    ErrorCurve c;
    c.set = builtin_set(14, 40);
    c.digits = 40;
    double vals[] = {0.0, 1.0, -0.9, 0.95, 0.0};
    for (int i = 0; i < 5; ++i) {
        c.xs.push_back(XReal(-5 + i, 30));
        c.values.push_back(XReal::from_double(vals[i], 40));
    }
    // two near-maximal extrema only 2 samples apart
    CHECK_THROWS_AS(equioscillation_report(c, 0.2), ResolutionError);
}

TEST_CASE("cram_apply at t = 0 is the identity up to the approximation level") {
    CoefficientSet s = builtin_set(14, 64);
    DecayChain chain{{XReal(2, 64), XReal(1, 64)}};
    RealMatrix a = chain_matrix(chain, 64);
    std::vector<XReal> x0 = {XReal(3, 64), XReal(-4, 64)};
    auto y = cram_apply(a, XReal(0, 64), x0, s);
    for (int i = 0; i < 2; ++i)
        CHECK((y[(size_t)i] - x0[(size_t)i]).abs() <=
              XReal::parse("2e-14", 30) * x0[(size_t)i].abs());
}

TEST_CASE("comparisons across very different magnitudes never allocate shifts") {
    XReal a = XReal::parse("9.99e200", 40);
    XReal b = XReal::parse("1.01e-200", 40);
    CHECK(a > b);
    CHECK(b < a);
    CHECK(a.neg() < b);
    CHECK(XReal::cmp(a, a) == 0);
}
