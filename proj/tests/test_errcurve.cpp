#include <doctest.h>

#include "cram/errcurve.hpp"
#include "cram/ratfun.hpp"
#include "support/testutil.hpp"

using namespace cram;

namespace {

// small hybrid grid for unit-test-speed sampling
Grid small_protocol(long n_log = 12000, long n_lin = 1500) {
    return Grid::hybrid(XReal::parse("-1e4", 30), XReal::parse("-1e-3", 30), n_log,
                        n_lin);
}

} // namespace

TEST_CASE("make_grid basics") {
    Grid lin = make_grid(GridSegment::Linear, XReal(-2, 30), XReal(0, 30), 3);
    auto pts = lin.materialize();
    REQUIRE(pts.size() == 3);
    CHECK(pts[0] == XReal(-2, 30));
    CHECK(pts[1] == XReal(-1, 30));
    CHECK(pts[2].is_zero());

    Grid lg = make_grid(GridSegment::Log, XReal::parse("-1e3", 30),
                        XReal::parse("-1e-10", 30), 14);
    auto lp = lg.materialize();
    REQUIRE(lp.size() == 14);
    CHECK(lp.front() == XReal::parse("-1e3", 30));
    CHECK(lp.back() == XReal::parse("-1e-10", 30));
    for (size_t i = 1; i < lp.size(); ++i) CHECK(lp[i - 1] < lp[i]);

    Grid two = make_grid(GridSegment::Linear, XReal(-5, 30), XReal(-1, 30), 2);
    auto tp = two.materialize();
    REQUIRE(tp.size() == 2);
    CHECK(tp[0] == XReal(-5, 30));
    CHECK(tp[1] == XReal(-1, 30));

    CHECK_THROWS_AS(make_grid(GridSegment::Linear, XReal(-1, 30), XReal(-2, 30), 5),
                    DomainError);
    CHECK_THROWS_AS(make_grid(GridSegment::Linear, XReal(-1, 30), XReal(1, 30), 5),
                    DomainError);
    CHECK_THROWS_AS(make_grid(GridSegment::Log, XReal(-1, 30), XReal(0, 30), 5),
                    DomainError);
    CHECK_THROWS_AS(make_grid(GridSegment::Linear, XReal(-1, 30), XReal(0, 30), 1),
                    DomainError);
}

TEST_CASE("hybrid grid dedupes the shared join point and stays sorted") {
    Grid g = Grid::hybrid(XReal(-10, 30), XReal(-1, 30), 50, 25);
    auto pts = g.materialize();
    CHECK((long)pts.size() == g.size());
    CHECK(pts.size() == 74);   // 50 + 25 - shared point
    for (size_t i = 1; i < pts.size(); ++i) CHECK(pts[i - 1] < pts[i]);
    CHECK(pts.back().is_zero());
}

TEST_CASE("sample_error values and determinism") {
    CoefficientSet s = builtin_set(14, 40);
    Grid g = Grid::linear(XReal(-2, 30), XReal(0, 30), 5);
    ErrorCurve c = sample_error(s, g, 40);
    REQUIRE(c.values.size() == 5);
    // value at x=0 is 1 - r(0), at the Fig-level magnitude
    CHECK(c.values.back().abs() <= XReal::parse("1.9e-14", 30));

    // identical protocol gives identical values
    ErrorCurve c2 = sample_error(s, g, 40);
    for (size_t i = 0; i < c.values.size(); ++i) CHECK(c.values[i] == c2.values[i]);

    // 20-digit truncation is the identity on the tables
    ErrorCurve c3 = sample_error(truncate_set(s, 20), g, 40);
    for (size_t i = 0; i < c.values.size(); ++i) CHECK(c.values[i] == c3.values[i]);

    CHECK_THROWS_AS(sample_error(s, g, 31), DomainError);
}

TEST_CASE("far tail: curve value approaches -alpha0") {
    CoefficientSet s = builtin_set(14, 40);
    Grid g = Grid::linear(XReal::parse("-1e6", 30), XReal::parse("-9.9e5", 30), 2);
    ErrorCurve c = sample_error(s, g, 40);
    // e^x vanishes; r -> alpha0 with the ~1.7e-16 1/x residue of the tables
    CHECK((c.values[0] + s.alpha0).abs() < XReal::parse("1e-15", 30));
}

TEST_CASE("sup_error on degenerate and small grids") {
    CoefficientSet s = builtin_set(14, 40);
    ErrorCurve single;
    single.set = s;
    single.digits = 40;
    single.xs = {XReal(0, 30)};
    single.values = {cram::exp(XReal(0, 40)) - eval_real(s, XReal(0, 40))};
    XReal sup = sup_error(single);
    CHECK(sup == single.values[0].abs());

    // refinement never loses the discrete max
    ErrorCurve c = sample_error(s, Grid::linear(XReal(-30, 30), XReal(0, 30), 400), 40);
    XReal dmax(0, 30);
    for (const auto& v : c.values)
        if (v.abs() > dmax) dmax = v.abs();
    CHECK(sup_error(c) >= dmax);
}

TEST_CASE("sup_error of the builtin sets sits at the alpha0 level") {
    CoefficientSet s14 = builtin_set(14, 40);
    XReal sup14 = sup_error_over(s14, small_protocol(), 40);
    CHECK(sup14 > XReal::parse("1.5e-14", 30));
    CHECK(sup14 < XReal::parse("2.1e-14", 30));
    CHECK((sup14 - s14.alpha0).abs() < s14.alpha0 * XReal::parse("0.15", 30));

    CoefficientSet s16 = builtin_set(16, 40);
    XReal sup16 = sup_error_over(s16, small_protocol(), 40);
    CHECK(sup16 > XReal::parse("1.7e-16", 30));
    CHECK(sup16 < XReal::parse("2.6e-16", 30));
    CHECK((sup16 - s16.alpha0).abs() < s16.alpha0 * XReal::parse("0.15", 30));
}

TEST_CASE("equioscillation of the builtin order-14 set") {
    CoefficientSet s = builtin_set(14, 40);
    ErrorCurve c = sample_error(s, small_protocol(), 40);
    EquioscillationReport rep = equioscillation_report(c, 0.1);
    CHECK(rep.alternation_count >= 29);
    CHECK(rep.includes_infinity_limit);
    CHECK(rep.level_uniformity < XReal::parse("1.01", 30));
    // error curve changes sign at least 29 times including the limit
    CHECK(rep.extrema.size() >= 29);

    // grid stability: doubling n leaves the count unchanged
    ErrorCurve c2 = sample_error(s, small_protocol(24000, 3000), 40);
    EquioscillationReport rep2 = equioscillation_report(c2, 0.1);
    CHECK(rep2.alternation_count == rep.alternation_count);
}

TEST_CASE("truncated coefficients do not equioscillate") {
    CoefficientSet t6 = truncate_set(builtin_set(14, 40), 6);
    ErrorCurve c = sample_error(t6, small_protocol(), 40);
    EquioscillationReport rep = equioscillation_report(c, 0.1);
    CHECK(rep.alternation_count < 29);
    CHECK(rep.level_uniformity > XReal(100, 30));
    CHECK(!rep.includes_infinity_limit);
}

TEST_CASE("constant zero curve yields no extrema") {
    ErrorCurve c;
    c.set = builtin_set(14, 40);
    c.digits = 40;
    for (int i = 0; i < 32; ++i) {
        c.xs.push_back(XReal(-32 + i, 30));
        c.values.push_back(XReal(0, 40));
    }
    EquioscillationReport rep = equioscillation_report(c, 0.1);
    CHECK(rep.extrema.empty());
    CHECK(rep.alternation_count == 0);
}

TEST_CASE("halphen ratio between orders 14 and 16") {
    CoefficientSet a = builtin_set(14, 40), b = builtin_set(16, 40);
    HalphenResult h = halphen_ratio(a, b, small_protocol(), 40);
    // reference H^2 = 86.286...
    CHECK(h.reference.str(5) == "8.6286e1");
    XReal dev = (h.ratio - h.reference).abs() / h.reference;
    CHECK(dev < XReal::parse("0.2", 30));
    CHECK_THROWS_AS(halphen_ratio(b, a, small_protocol(), 40), DomainError);

    // identical sets: ratio exactly 1, reference H^0 = 1
    HalphenResult same = halphen_ratio(a, builtin_set(14, 40), small_protocol(), 40);
    CHECK(same.ratio == XReal(1, 40));
    CHECK(same.reference == XReal(1, 40));
}
