#include "cram/sensitivity.hpp"

#include <cmath>

#include "cram/ratfun.hpp"

namespace cram {

XReal eq6_bound(const CoefficientSet& base, const CoefficientSet& perturbed,
                const XComplex& z) {
    if (base.order != perturbed.order ||
        base.poles.size() != perturbed.poles.size())
        throw DomainError("eq6_bound: sets must share order and pole pairing");
    int digits = std::max({base.digits(), perturbed.digits(), z.digits()});
    XReal prox2 = XReal::parse("1e-6", 30);   // (1e-3)^2
    XReal acc = (base.alpha0.with_digits(digits) - perturbed.alpha0.with_digits(digits)).abs();
    for (size_t j = 0; j < base.poles.size(); ++j) {
        // expand the conjugate pair explicitly
        for (int half = 0; half < 2; ++half) {
            XComplex th = half ? base.poles[j].conj() : base.poles[j];
            XComplex tht = half ? perturbed.poles[j].conj() : perturbed.poles[j];
            XComplex al = half ? base.residues[j].conj() : base.residues[j];
            XComplex alt = half ? perturbed.residues[j].conj() : perturbed.residues[j];
            XComplex d = z.with_digits(digits) - th.with_digits(digits);
            XReal d2 = d.norm2();
            if (d2 <= prox2)
                throw PoleProximityError(
                    "eq6_bound: z within 1e-3 of pole " + std::to_string(j), (int)j);
            XReal dist = d2.sqrt();
            acc = acc + al.abs() * (th - tht).abs() / d2;
            acc = acc + (al - alt).abs() / dist;
        }
    }
    return acc;
}

PerturbationReport truncation_experiment(const CoefficientSet& set, int digits_kept,
                                         const Grid& grid, int digits) {
    CoefficientSet pert = truncate_set(set, digits_kept);
    PerturbationReport rep;
    rep.base_label = set.label;
    rep.perturbed_label = pert.label;
    rep.grid = grid;
    rep.max_measured = XReal(0, digits);
    rep.max_bound = XReal(0, digits);
    long n = grid.size();
    rep.xs.reserve((size_t)n);
    rep.measured.reserve((size_t)n);
    rep.bound.reserve((size_t)n);
    grid.for_each([&](long, const XReal& x) {
        XReal xd = x.with_digits(digits);
        XReal m = (eval_real(set, xd) - eval_real(pert, xd)).abs();
        XReal b = eq6_bound(set, pert, XComplex(xd));
        rep.xs.push_back(x);
        rep.measured.push_back(m);
        rep.bound.push_back(b);
        if (m > rep.max_measured) rep.max_measured = m;
        if (b > rep.max_bound) rep.max_bound = b;
    });
    return rep;
}

ComplexGrid complex_grid_diff(const CoefficientSet& base,
                              const CoefficientSet& perturbed, const XReal& re_lo,
                              const XReal& re_hi, const XReal& im_lo,
                              const XReal& im_hi, long nre, long nim, int digits) {
    if (nre < 2 || nim < 2) throw DomainError("complex_grid_diff: need >= 2x2 cells");
    if (!(re_lo < re_hi) || !(im_lo < im_hi))
        throw DomainError("complex_grid_diff: empty window");
    ComplexGrid g;
    g.nre = nre;
    g.nim = nim;
    g.pole_markers = base.poles;

    auto axis = [&](const XReal& lo, const XReal& hi, long n) {
        std::vector<XReal> pts;
        XReal step = (hi.with_digits(34) - lo.with_digits(34)) / XReal(n - 1, 34);
        for (long i = 0; i < n; ++i)
            pts.push_back(i + 1 == n ? hi.with_digits(30)
                                     : (lo.with_digits(34) + XReal(i, 34) * step)
                                           .with_digits(30));
        return pts;
    };
    g.re_axis = axis(re_lo, re_hi, nre);
    g.im_axis = axis(im_lo, im_hi, nim);

    XReal mask2 = XReal::parse("1e-12", 30);   // (1e-6)^2 pole mask
    g.log10diff.resize((size_t)(nre * nim), 0.0);
    g.masked.resize((size_t)(nre * nim), 0);

    for (long iy = 0; iy < nim; ++iy) {
        for (long ix = 0; ix < nre; ++ix) {
            size_t cell = (size_t)(iy * nre + ix);
            XComplex z{g.re_axis[(size_t)ix].with_digits(digits),
                       g.im_axis[(size_t)iy].with_digits(digits)};
            bool near_pole = false;
            for (const auto& th : base.poles) {
                if ((z - th).norm2() <= mask2 || (z - th.conj()).norm2() <= mask2) {
                    near_pole = true;
                    break;
                }
            }
            if (near_pole) {
                g.masked[cell] = 1;
                continue;
            }
            XComplex d = eval_complex(base, z) - eval_complex(perturbed, z);
            XReal a2 = d.norm2();
            if (a2.is_zero()) {
                g.masked[cell] = 1;   // exact zero difference: -inf sentinel
                continue;
            }
            // log10|d| = mag + log10(mantissa); double precision is plenty
            // for plot data
            XReal a = a2.sqrt();
            long long mag = a.mag10();
            double mant = a.scaled_pow10(-mag).to_double();
            g.log10diff[cell] = (double)mag + std::log10(mant);
        }
    }
    return g;
}

} // namespace cram
