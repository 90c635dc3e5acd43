#include "cram/ratfun.hpp"

#include <algorithm>
#include <cmath>

namespace cram {

int agreement_digits(const XReal& a, const XReal& b) {
    XReal d = (a - b).abs();
    if (d.is_zero()) return 99;
    XReal ref = a.is_zero() ? b.abs() : a.abs();
    if (ref.is_zero()) return 0;
    long long ad = ref.mag10() - d.mag10();
    if (ad < 0) return 0;
    return (int)std::min<long long>(ad, 99);
}

int agreement_digits(const XComplex& a, const XComplex& b) {
    XReal d = (a - b).abs();
    if (d.is_zero()) return 99;
    XReal ref = a.abs();
    if (ref.is_zero()) return 0;
    long long ad = ref.mag10() - d.mag10();
    if (ad < 0) return 0;
    return (int)std::min<long long>(ad, 99);
}

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

XReal eval_real(const CoefficientSet& set, const XReal& x) {
    int digits = std::max(set.digits(), x.digits());
    XReal xsum(0, digits);
    for (size_t j = 0; j < set.poles.size(); ++j) {
        const XComplex& th = set.poles[j];
        const XComplex& al = set.residues[j];
        // Re( alpha / (x - theta) ) = Re(alpha * conj(x-theta)) / |x-theta|^2
        XReal dre = x - th.re;
        XReal n2 = dre * dre + th.im * th.im;
        XReal num = al.re * dre - al.im * th.im;   // conj(x-theta) has im = -theta.im
        xsum = xsum + num / n2;
    }
    return set.alpha0.with_digits(digits) + (xsum + xsum);
}

XComplex eval_complex(const CoefficientSet& set, const XComplex& z) {
    int digits = std::max(set.digits(), z.digits());
    XReal prox2 = XReal::pow10(2 * (-digits + 4), 30);
    XComplex acc{XReal(0, digits), XReal(0, digits)};
    for (size_t j = 0; j < set.poles.size(); ++j) {
        const XComplex& th = set.poles[j];
        const XComplex& al = set.residues[j];
        XComplex d1 = z - th;
        XComplex d2 = z - th.conj();
        if (d1.norm2() <= prox2 || d2.norm2() <= prox2)
            throw PoleProximityError(
                "eval_complex: z within 10^(-digits+4) of pole " + std::to_string(j),
                (int)j);
        acc = acc + al / d1 + al.conj() / d2;
    }
    return XComplex(set.alpha0.with_digits(digits)) + acc;
}

// ---------------------------------------------------------------------------
// polynomial forms
// ---------------------------------------------------------------------------

namespace {

// complex polynomial, ascending coefficients
using CPoly = std::vector<XComplex>;

CPoly cpoly_one(int digits) { return {XComplex(XReal(1, digits))}; }

// p *= (x - root)
void cpoly_mul_linear(CPoly& p, const XComplex& root) {
    int digits = root.digits();
    CPoly out((size_t)p.size() + 1, XComplex(XReal(0, digits)));
    for (size_t i = 0; i < p.size(); ++i) {
        out[i + 1] = out[i + 1] + p[i];
        out[i] = out[i] - root * p[i];
    }
    p = std::move(out);
}

std::vector<XComplex> full_pole_list(const CoefficientSet& set, int digits) {
    std::vector<XComplex> th;
    th.reserve(set.poles.size() * 2);
    for (const auto& p : set.poles) th.push_back(p.with_digits(digits));
    for (const auto& p : set.poles) th.push_back(p.conj().with_digits(digits));
    return th;
}

// Re-extract a complex polynomial whose value is analytically real; the
// imaginary residue must stay below 10^(-digits+6) of the coefficient scale.
Polynomial realize(const CPoly& p, int digits, const char* what) {
    XReal scale(0, 30);
    for (const auto& c : p) {
        XReal m = c.re.abs() + c.im.abs();
        if (m > scale) scale = m;
    }
    XReal thresh = scale * XReal::pow10(-digits + 6, 30);
    std::vector<XReal> out;
    out.reserve(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i].im.abs() > thresh)
            throw Error(std::string(what) +
                        ": imaginary residue above threshold at coefficient " +
                        std::to_string(i) + " (" + p[i].im.str(3) + ")");
        out.push_back(p[i].re);
    }
    // trim leading coefficients that are exactly (or numerically) zero
    XReal trim_thresh = scale * XReal::pow10(-digits + 4, 30);
    while (out.size() > 1 && out.back().abs() <= trim_thresh) out.pop_back();
    return Polynomial{std::move(out)};
}

int working_digits(const CoefficientSet& set, int digits) {
    return digits > 0 ? digits : set.digits();
}

} // namespace

Polynomial denominator_from_poles(const CoefficientSet& set, int digits) {
    int d = working_digits(set, digits);
    CPoly q = cpoly_one(d);
    for (const auto& th : full_pole_list(set, d)) cpoly_mul_linear(q, th);
    Polynomial out = realize(q, d, "denominator_from_poles");
    if (out.degree() != set.order)
        throw Error("denominator_from_poles: degree mismatch");
    return out;
}

Polynomial numerator_from_pfd(const CoefficientSet& set, int digits) {
    int d = working_digits(set, digits);
    std::vector<XComplex> th = full_pole_list(set, d);
    std::vector<XComplex> al;
    al.reserve(th.size());
    for (const auto& a : set.residues) al.push_back(a.with_digits(d));
    for (const auto& a : set.residues) al.push_back(a.conj().with_digits(d));

    // alpha0 * q
    CPoly q = cpoly_one(d);
    for (const auto& t : th) cpoly_mul_linear(q, t);
    CPoly p(q.size(), XComplex(XReal(0, d)));
    XComplex a0{set.alpha0.with_digits(d), XReal(0, d)};
    for (size_t i = 0; i < q.size(); ++i) p[i] = a0 * q[i];

    // + sum_j alpha_j prod_{i != j} (x - theta_i)
    for (size_t j = 0; j < th.size(); ++j) {
        CPoly pj = cpoly_one(d);
        for (size_t i = 0; i < th.size(); ++i)
            if (i != j) cpoly_mul_linear(pj, th[i]);
        for (size_t i = 0; i < pj.size(); ++i) p[i] = p[i] + al[j] * pj[i];
    }
    return realize(p, d, "numerator_from_pfd");
}

// ---------------------------------------------------------------------------
// root finding
// ---------------------------------------------------------------------------

namespace {

XComplex cpx_from_double(double re, double im, int digits) {
    return {XReal::from_double(re, digits), XReal::from_double(im, digits)};
}

// Root modulus bound 2 * max_i |c_{k-i}/c_k|^(1/i) (Fujiwara form), evaluated
// in double precision from decimal magnitudes; only used to place starts.
double start_radius(const Polynomial& p) {
    int k = p.degree();
    double lead = std::log10(std::fabs(p.lead().to_double()));
    double best = 0.0;
    for (int i = 1; i <= k; ++i) {
        const XReal& c = p.coeffs[(size_t)(k - i)];
        if (c.is_zero()) continue;
        double lg = ((double)c.mag10() - lead) / i;
        best = std::max(best, lg);
    }
    return 2.0 * std::pow(10.0, best);
}

} // namespace

RootResult find_roots(const Polynomial& poly, int digits) {
    if (poly.degree() < 1) throw DomainError("find_roots: degree must be >= 1");
    if (poly.lead().is_zero()) throw DomainError("find_roots: zero leading coefficient");
    const int k = poly.degree();
    const int work = std::min(digits + 10, (int)XReal::kMaxDigits);

    std::vector<XComplex> z((size_t)k);
    if (k == 1) {
        RootResult r;
        r.roots.push_back(XComplex(poly.coeffs[0].with_digits(work).neg() /
                                   poly.coeffs[1].with_digits(work)));
        r.residuals.push_back(poly.eval(r.roots[0]).abs());
        r.iterations = 0;
        return r;
    }

    Polynomial p;
    for (const auto& c : poly.coeffs) p.coeffs.push_back(c.with_digits(work));
    Polynomial dp = p.derivative();

    const double r0 = start_radius(poly);
    for (int j = 0; j < k; ++j) {
        double phi = 2.0 * M_PI * j / k + 0.4;
        z[(size_t)j] = cpx_from_double(r0 * std::cos(phi), r0 * std::sin(phi), work);
    }

    XReal tol = XReal::pow10(-digits + 6, 30);
    const int max_iter = 200;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        XReal worst(0, 30);
        for (int j = 0; j < k; ++j) {
            XComplex& zj = z[(size_t)j];
            XComplex pv = p.eval(zj);
            if (pv.is_zero()) continue;                    // already exact
            XComplex dv = dp.eval(zj);
            if (dv.is_zero()) {                            // sit on a critical point
                zj = zj + cpx_from_double(r0 * 1e-7 * (j + 1), r0 * 5e-8, work);
                worst = XReal(1, 30);
                continue;
            }
            XComplex nj = pv / dv;
            XComplex s{XReal(0, work), XReal(0, work)};
            bool collision = false;
            for (int i = 0; i < k; ++i) {
                if (i == j) continue;
                XComplex d = zj - z[(size_t)i];
                if (d.is_zero()) {                         // nudge duplicates apart
                    zj = zj + cpx_from_double(r0 * 1e-7 * (i + 1), -r0 * 3e-8, work);
                    collision = true;
                    break;
                }
                s = s + XComplex(XReal(1, work)) / d;
            }
            if (collision) {
                worst = XReal(1, 30);
                continue;
            }
            XComplex denom = XComplex(XReal(1, work)) - nj * s;
            XComplex delta = denom.is_zero() ? nj : nj / denom;
            zj = zj - delta;
            if (!zj.is_zero()) {
                XReal rel2 = delta.norm2() / zj.norm2();
                if (rel2 > worst) worst = rel2;
            }
        }
        if (worst < tol * tol) break;
    }
    if (iter >= max_iter) {
        std::string msg = "find_roots: no convergence in 200 iterations; residuals:";
        for (int j = 0; j < k; ++j) msg += " " + p.eval(z[(size_t)j]).abs().str(3);
        throw ConvergenceError(msg);
    }

    RootResult r;
    r.iterations = iter + 1;
    r.roots = std::move(z);
    std::sort(r.roots.begin(), r.roots.end(), [](const XComplex& a, const XComplex& b) {
        if (a.im != b.im) return a.im > b.im;
        return a.re < b.re;
    });
    for (const auto& root : r.roots) r.residuals.push_back(p.eval(root).abs());
    return r;
}

// ---------------------------------------------------------------------------
// residues and round trip
// ---------------------------------------------------------------------------

ResidueResult residues_from_polys(const Polynomial& p, const Polynomial& q,
                                  const std::vector<XComplex>& poles) {
    if (p.empty() || q.empty()) throw DomainError("residues_from_polys: empty input");
    int digits = std::max(p.lead().digits(), q.lead().digits());
    Polynomial dq = q.derivative();
    ResidueResult out;
    for (size_t j = 0; j < poles.size(); ++j) {
        const XComplex& th = poles[j];
        XComplex dv = dq.eval(th);
        XReal scale = dq.eval_abs(th.abs());
        if (dv.abs() < scale * XReal::pow10(-digits + 10, 30))
            throw Error("residues_from_polys: |q'(theta)| too small at pole " +
                        std::to_string(j) + " (near-multiple pole)");
        out.residues.push_back(p.eval(th) / dv);
    }
    if (p.degree() == q.degree()) out.alpha0 = p.lead() / q.lead();
    else out.alpha0 = XReal(0, digits);
    return out;
}

namespace {

// Match computed upper-half-plane roots to the set's poles, nearest neighbor
// within absolute tolerance 1e-4; ambiguity is an error.
std::vector<XComplex> match_roots(const std::vector<XComplex>& roots,
                                  const std::vector<XComplex>& poles) {
    XReal tol2 = XReal::pow10(-8, 30);   // (1e-4)^2
    std::vector<XComplex> matched;
    std::vector<bool> used(roots.size(), false);
    for (size_t j = 0; j < poles.size(); ++j) {
        int best = -1, second = -1;
        XReal bd2(0, 30), sd2(0, 30);
        for (size_t i = 0; i < roots.size(); ++i) {
            if (used[i]) continue;
            XReal d2 = (roots[i] - poles[j]).norm2();
            if (best < 0 || d2 < bd2) {
                second = best; sd2 = bd2;
                best = (int)i; bd2 = d2;
            } else if (second < 0 || d2 < sd2) {
                second = (int)i; sd2 = d2;
            }
        }
        if (best < 0 || bd2 > tol2)
            throw Error("roundtrip: no computed root within 1e-4 of pole " +
                        std::to_string(j));
        if (second >= 0 && sd2 <= tol2)
            throw Error("roundtrip: ambiguous root match at pole " + std::to_string(j));
        used[(size_t)best] = true;
        matched.push_back(roots[(size_t)best]);
    }
    return matched;
}

} // namespace

RoundTripReport roundtrip_report(const CoefficientSet& set, int digits) {
    if (digits < 40) throw DomainError("roundtrip_report: needs digits >= 40");
    CoefficientSet s;
    s.order = set.order;
    s.alpha0 = set.alpha0.with_digits(digits);
    s.label = set.label;
    for (const auto& p : set.poles) s.poles.push_back(p.with_digits(digits));
    for (const auto& a : set.residues) s.residues.push_back(a.with_digits(digits));

    Polynomial q = denominator_from_poles(s, digits);
    Polynomial p = numerator_from_pfd(s, digits);
    RootResult roots = find_roots(q, digits);

    std::vector<XComplex> upper;
    for (const auto& r : roots.roots)
        if (r.im.sign() > 0) upper.push_back(r);
    if (upper.size() != s.poles.size())
        throw Error("roundtrip: expected " + std::to_string(s.poles.size()) +
                    " upper-half-plane roots, found " + std::to_string(upper.size()));
    std::vector<XComplex> matched = match_roots(upper, s.poles);
    ResidueResult res = residues_from_polys(p, q, matched);

    RoundTripReport rep;
    rep.order = s.order;
    rep.digits = digits;
    auto add = [&](const std::string& name, const XComplex& orig, const XComplex& rec) {
        rep.rows.push_back({name, orig, rec, agreement_digits(orig, rec)});
    };
    add("alpha0", XComplex(s.alpha0), XComplex(res.alpha0));
    for (size_t j = 0; j < s.poles.size(); ++j)
        add("theta " + std::to_string(j + 1), s.poles[j], matched[j]);
    for (size_t j = 0; j < s.residues.size(); ++j)
        add("alpha " + std::to_string(j + 1), s.residues[j], res.residues[j]);
    rep.min_agree = 99;
    for (const auto& r : rep.rows) rep.min_agree = std::min(rep.min_agree, r.agree_digits);
    return rep;
}

RoundTripReport compare_sets(const CoefficientSet& a, const CoefficientSet& b) {
    if (a.order != b.order) throw DomainError("compare_sets: order mismatch");
    RoundTripReport rep;
    rep.order = a.order;
    rep.digits = std::max(a.digits(), b.digits());
    auto add = [&](const std::string& name, const XComplex& x, const XComplex& y) {
        rep.rows.push_back({name, x, y, agreement_digits(x, y)});
    };
    add("alpha0", XComplex(a.alpha0), XComplex(b.alpha0));
    for (size_t j = 0; j < a.poles.size(); ++j)
        add("theta " + std::to_string(j + 1), a.poles[j], b.poles[j]);
    for (size_t j = 0; j < a.residues.size(); ++j)
        add("alpha " + std::to_string(j + 1), a.residues[j], b.residues[j]);
    rep.min_agree = 99;
    for (const auto& r : rep.rows) rep.min_agree = std::min(rep.min_agree, r.agree_digits);
    return rep;
}

} // namespace cram
