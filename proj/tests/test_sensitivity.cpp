#include <doctest.h>

#include "cram/ratfun.hpp"
#include "cram/sensitivity.hpp"
#include "support/testutil.hpp"

using namespace cram;

namespace {
Grid unit_grid(long n = 1500) {
    return Grid::log(XReal::parse("-1e3", 30), XReal::parse("-1e-8", 30), n);
}
} // namespace

TEST_CASE("eq6_bound vanishes for identical sets") {
    CoefficientSet s = builtin_set(14, 40);
    XReal b = eq6_bound(s, s, XComplex(XReal(-10, 40)));
    CHECK(b.is_zero());
}

TEST_CASE("eq6_bound magnitude for 6-digit truncation at z=-10") {
    CoefficientSet s = builtin_set(14, 40);
    CoefficientSet t = truncate_set(s, 6);
    XReal b = eq6_bound(s, t, XComplex(XReal(-10, 40)));
    CHECK(b < XReal::parse("1e-2", 30));
    CHECK(b > XReal::parse("1e-6", 30));
}

TEST_CASE("eq6_bound is linear in the pole perturbation") {
    CoefficientSet s = builtin_set(14, 40);
    // perturb poles only, residues and alpha0 fixed
    CoefficientSet p1 = s;
    XComplex eps{XReal::parse("1e-6", 40), XReal::parse("-2e-6", 40)};
    for (auto& th : p1.poles) th = th + eps;
    CoefficientSet p2 = s;
    XComplex eps2 = eps + eps;
    for (auto& th : p2.poles) th = th + eps2;

    XComplex z{XReal(-7, 40), XReal(0, 40)};
    XReal b1 = eq6_bound(s, p1, z);
    XReal b2 = eq6_bound(s, p2, z);
    CHECK(agreement_digits(b2, b1 + b1) >= 36);
}

TEST_CASE("eq6_bound guards") {
    CoefficientSet s14 = builtin_set(14, 40);
    CoefficientSet s16 = builtin_set(16, 40);
    CHECK_THROWS_AS(eq6_bound(s14, s16, XComplex(XReal(-1, 40))), DomainError);
    XComplex near = s14.poles[2] + XComplex(XReal::parse("1e-4", 40), XReal(0, 40));
    CHECK_THROWS_AS(eq6_bound(s14, truncate_set(s14, 6), near), PoleProximityError);
}

TEST_CASE("quasi-symmetry of the bound under swapping base and perturbed") {
    CoefficientSet s = builtin_set(14, 40);
    CoefficientSet t = truncate_set(s, 6);
    // max relative coefficient perturbation
    XReal maxrel(0, 40);
    for (size_t j = 0; j < s.poles.size(); ++j) {
        XReal rp = (s.poles[j] - t.poles[j]).abs() / s.poles[j].abs();
        XReal rr = (s.residues[j] - t.residues[j]).abs() / s.residues[j].abs();
        if (rp > maxrel) maxrel = rp;
        if (rr > maxrel) maxrel = rr;
    }
    XReal factor = XReal(1, 40) + XReal(10, 40) * maxrel;
    for (double xv : {-3.0, -20.0, -150.0}) {
        XComplex z{XReal::from_double(xv, 40), XReal(0, 40)};
        XReal ab = eq6_bound(s, t, z);
        XReal ba = eq6_bound(t, s, z);
        CHECK(ab <= ba * factor);
        CHECK(ba <= ab * factor);
    }
}

TEST_CASE("truncation_experiment at d=20 is exact identity") {
    CoefficientSet s = builtin_set(14, 40);
    PerturbationReport rep = truncation_experiment(s, 20, unit_grid(200), 40);
    CHECK(rep.max_measured.is_zero());
}

TEST_CASE("truncation_experiment at d=6 matches the expected band") {
    CoefficientSet s = builtin_set(14, 40);
    PerturbationReport rep = truncation_experiment(s, 6, unit_grid(), 40);
    CHECK(rep.max_measured > XReal::parse("1e-5", 30));
    CHECK(rep.max_measured < XReal::parse("1e-2", 30));
    // every real-axis point is farther than 1 from every pole, so the
    // first-order bound must cover the measurement within a factor of 10
    REQUIRE(rep.measured.size() == rep.bound.size());
    for (size_t i = 0; i < rep.measured.size(); ++i)
        CHECK(rep.measured[i] <= XReal(10, 40) * rep.bound[i]);
}

TEST_CASE("max deviation shrinks as more digits are kept") {
    CoefficientSet s = builtin_set(14, 40);
    Grid g = unit_grid(400);
    XReal prev;
    bool first = true;
    for (int d : {4, 6, 8, 10, 12, 14}) {
        PerturbationReport rep = truncation_experiment(s, d, g, 40);
        if (!first) {
            // non-increasing up to the documented slack
            XReal slack = XReal(1, 40) - XReal::pow10(-d + 2, 40);
            CHECK(prev >= rep.max_measured * slack);
        }
        prev = rep.max_measured;
        first = false;
    }
}

TEST_CASE("far field: an alpha0-only perturbation is reproduced exactly") {
    CoefficientSet s = builtin_set(14, 40);
    CoefficientSet p = s;
    p.alpha0 = s.alpha0.round_sig(6);
    XReal x = XReal::parse("-1e6", 40);
    XReal measured = (eval_real(s, x) - eval_real(p, x)).abs();
    XReal want = (s.alpha0 - p.alpha0).abs();
    CHECK((measured - want).abs() <= XReal::pow10(-19, 30));
}

TEST_CASE("complex_grid_diff masks and orders") {
    CoefficientSet s = builtin_set(14, 32);
    CoefficientSet t = truncate_set(s, 6);
    ComplexGrid g = complex_grid_diff(s, t, XReal(-15, 32), XReal(10, 32),
                                      XReal(0, 32), XReal(20, 32), 51, 41, 32);
    REQUIRE(g.re_axis.size() == 51);
    REQUIRE(g.im_axis.size() == 41);
    REQUIRE(g.pole_markers.size() == 7);
    for (size_t j = 0; j < 7; ++j) CHECK(g.pole_markers[j] == s.poles[j]);

    // cell nearest theta4 ~ (3.99, 6.00) vs the (-15, 20) corner
    auto nearest = [&](const std::vector<XReal>& axis, double v) {
        size_t best = 0;
        double bd = 1e300;
        for (size_t i = 0; i < axis.size(); ++i) {
            double d = std::fabs(axis[i].to_double() - v);
            if (d < bd) { bd = d; best = i; }
        }
        return best;
    };
    size_t ix = nearest(g.re_axis, 3.99), iy = nearest(g.im_axis, 6.0);
    size_t cell = iy * (size_t)g.nre + ix;
    size_t corner = (size_t)(g.nim - 1) * (size_t)g.nre;   // (-15, 20)
    REQUIRE(!g.masked[cell]);
    REQUIRE(!g.masked[corner]);
    CHECK(g.log10diff[cell] > g.log10diff[corner]);

    // identical sets: every unmasked evaluation is an exact zero -> masked
    ComplexGrid zg = complex_grid_diff(s, s, XReal(-4, 32), XReal(-2, 32),
                                       XReal(1, 32), XReal(3, 32), 5, 5, 32);
    for (uint8_t m : zg.masked) CHECK(m == 1);
}
