#include "cram/errcurve.hpp"

#include <algorithm>
#include <sstream>

#include "cram/ratfun.hpp"

namespace cram {

namespace {

constexpr int kGridDigits = 30;
constexpr int kGridWork = 38;

void check_segment(GridSegment::Kind kind, const XReal& lo, const XReal& hi, long n) {
    if (n < 2) throw DomainError("grid: need at least 2 points per segment");
    if (!(lo < hi)) throw DomainError("grid: lo must be < hi");
    if (hi.sign() > 0) throw DomainError("grid: points must lie in (-inf, 0]");
    if (kind == GridSegment::Log && hi.sign() == 0)
        throw DomainError("grid: log spacing needs lo, hi < 0");
}

void emit_segment(const GridSegment& seg,
                  const std::function<void(const XReal&)>& out) {
    if (seg.kind == GridSegment::Linear) {
        XReal step = (seg.hi.with_digits(kGridWork) - seg.lo.with_digits(kGridWork)) /
                     XReal(seg.n - 1, kGridWork);
        for (long i = 0; i < seg.n; ++i) {
            if (i == 0) out(seg.lo.with_digits(kGridDigits));
            else if (i == seg.n - 1) out(seg.hi.with_digits(kGridDigits));
            else out((seg.lo.with_digits(kGridWork) + XReal(i, kGridWork) * step)
                         .with_digits(kGridDigits));
        }
        return;
    }
    // log: |x| runs geometrically from |lo| to |hi| by a fixed ratio
    XReal a = seg.lo.abs().with_digits(kGridWork);
    XReal b = seg.hi.abs().with_digits(kGridWork);
    XReal step = ln(b / a, kGridWork).div_small((uint32_t)(seg.n - 1));
    XReal ratio = exp(step, kGridWork);
    XReal cur = a;
    for (long i = 0; i < seg.n; ++i) {
        if (i == 0) out(seg.lo.with_digits(kGridDigits));
        else if (i == seg.n - 1) out(seg.hi.with_digits(kGridDigits));
        else {
            cur = cur * ratio;
            out(cur.neg().with_digits(kGridDigits));
        }
    }
}

} // namespace

long Grid::size() const {
    long total = 0;
    for (const auto& s : segments) total += s.n;
    // segments may share a boundary point; duplicates are emitted once
    for (size_t i = 1; i < segments.size(); ++i)
        if (segments[i].lo == segments[i - 1].hi) --total;
    return total;
}

void Grid::for_each(const std::function<void(long, const XReal&)>& fn) const {
    long idx = 0;
    bool have_last = false;
    XReal last;
    for (const auto& seg : segments) {
        emit_segment(seg, [&](const XReal& x) {
            if (have_last && x == last) return;
            fn(idx++, x);
            last = x;
            have_last = true;
        });
    }
}

std::vector<XReal> Grid::materialize() const {
    std::vector<XReal> out;
    out.reserve((size_t)size());
    for_each([&](long, const XReal& x) { out.push_back(x); });
    return out;
}

std::string Grid::describe() const {
    std::ostringstream os;
    for (size_t i = 0; i < segments.size(); ++i) {
        const auto& s = segments[i];
        if (i) os << "+";
        os << (s.kind == GridSegment::Log ? "log:" : "linear:") << s.lo.str()
           << ":" << s.hi.str() << ":" << s.n;
    }
    return os.str();
}

Grid make_grid(GridSegment::Kind kind, const XReal& lo, const XReal& hi, long n) {
    check_segment(kind, lo, hi, n);
    Grid g;
    g.segments.push_back({kind, lo.with_digits(kGridDigits),
                          hi.with_digits(kGridDigits), n});
    return g;
}

Grid Grid::log(const XReal& lo, const XReal& hi, long n) {
    return make_grid(GridSegment::Log, lo, hi, n);
}

Grid Grid::linear(const XReal& lo, const XReal& hi, long n) {
    return make_grid(GridSegment::Linear, lo, hi, n);
}

Grid Grid::hybrid(const XReal& lo, const XReal& join, long n_log, long n_lin) {
    Grid g = log(lo, join, n_log);
    Grid lin = linear(join, XReal(0, kGridDigits), n_lin);
    g.segments.push_back(lin.segments[0]);
    return g;
}

Grid Grid::standard_protocol() {
    // [-1e4, -1e-3] log-spaced plus [-1e-3, 0] linear: wide enough to catch
    // the outermost finite extremum of both built-in orders (near -1.85e3 and
    // -2.72e3) while resolving the dense oscillations near zero.
    return hybrid(XReal::parse("-1e4", kGridDigits), XReal::parse("-1e-3", kGridDigits),
                  90000, 10001);
}

// ---------------------------------------------------------------------------
// sampling
// ---------------------------------------------------------------------------

namespace {

CoefficientSet set_at(const CoefficientSet& set, int digits) {
    CoefficientSet s;
    s.order = set.order;
    s.alpha0 = set.alpha0.with_digits(digits);
    s.label = set.label;
    for (const auto& p : set.poles) s.poles.push_back(p.with_digits(digits));
    for (const auto& a : set.residues) s.residues.push_back(a.with_digits(digits));
    return s;
}

XReal curve_value(const CoefficientSet& set, const XReal& x, int digits) {
    return exp(x.with_digits(digits), digits) - eval_real(set, x.with_digits(digits));
}

} // namespace

ErrorCurve sample_error(const CoefficientSet& set, const Grid& grid, int digits) {
    if (digits < 32) throw DomainError("sample_error: needs digits >= 32");
    ErrorCurve c;
    c.grid = grid;
    c.digits = digits;
    c.set = set_at(set, digits);
    c.set_label = set.label;
    long n = grid.size();
    c.xs.reserve((size_t)n);
    c.values.reserve((size_t)n);
    grid.for_each([&](long, const XReal& x) {
        c.xs.push_back(x);
        c.values.push_back(curve_value(c.set, x, digits));
    });
    return c;
}

namespace {

XReal golden_refine(const CoefficientSet& set, int digits, const XReal& lo,
                    const XReal& hi, const XReal& discrete_max) {
    XReal best = discrete_max;
    if (!(lo < hi)) return best;
    XReal phi = (XReal(5, 40).sqrt() - XReal(1, 40)).div_small(2);  // 0.618...
    XReal a = lo.with_digits(40), b = hi.with_digits(40);
    for (int round = 0; round < 3; ++round) {
        XReal w = (b - a) * phi;
        XReal c = b - w;   // left probe
        XReal d = a + w;   // right probe
        XReal fc = curve_value(set, c, digits).abs();
        XReal fd = curve_value(set, d, digits).abs();
        if (fc > best) best = fc;
        if (fd > best) best = fd;
        if (fc > fd) b = d; else a = c;
    }
    return best;
}

struct SupScan {
    XReal max_abs;
    XReal bracket_lo, bracket_hi;
    bool have = false;
    XReal prev_x;
    bool have_prev = false;
    bool last_was_max = false;

    void feed(const XReal& x, const XReal& v) {
        XReal a = v.abs();
        if (last_was_max) {            // extend the bracket one point right
            bracket_hi = x;
            last_was_max = false;
        }
        if (!have || a > max_abs) {
            max_abs = a;
            bracket_lo = have_prev ? prev_x : x;
            bracket_hi = x;            // widened on the next feed
            last_was_max = true;
            have = true;
        }
        prev_x = x;
        have_prev = true;
    }
};

} // namespace

XReal sup_error(const ErrorCurve& curve) {
    if (curve.values.empty()) throw DomainError("sup_error: empty curve");
    SupScan scan;
    for (size_t i = 0; i < curve.values.size(); ++i)
        scan.feed(curve.xs[i], curve.values[i]);
    return golden_refine(curve.set, curve.digits, scan.bracket_lo, scan.bracket_hi,
                         scan.max_abs);
}

XReal sup_error_over(const CoefficientSet& set, const Grid& grid, int digits) {
    if (digits < 32) throw DomainError("sup_error_over: needs digits >= 32");
    CoefficientSet s = set_at(set, digits);
    SupScan scan;
    grid.for_each([&](long, const XReal& x) {
        scan.feed(x, curve_value(s, x, digits));
    });
    if (!scan.have) throw DomainError("sup_error_over: empty grid");
    return golden_refine(s, digits, scan.bracket_lo, scan.bracket_hi, scan.max_abs);
}

// ---------------------------------------------------------------------------
// equioscillation
// ---------------------------------------------------------------------------

EquioscillationReport equioscillation_report(const ErrorCurve& curve,
                                             double tolerance_fraction) {
    if (tolerance_fraction <= 0.0 || tolerance_fraction >= 1.0)
        throw DomainError("equioscillation_report: tolerance must be in (0,1)");
    const auto& v = curve.values;
    const size_t n = v.size();
    if (n == 0) throw DomainError("equioscillation_report: empty curve");

    EquioscillationReport rep;
    rep.sup = sup_error(curve);

    // discrete max for thresholding
    XReal dmax(0, 30);
    for (const auto& val : v)
        if (val.abs() > dmax) dmax = val.abs();
    if (dmax.is_zero()) {
        rep.level_uniformity = XReal(1, 30);
        return rep;   // constant zero curve: no extrema
    }

    // local maxima of |v| with plateau handling (first index of a flat run)
    std::vector<size_t> maxima;
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && v[j + 1].abs() == v[i].abs()) ++j;
        bool rise = i == 0 || v[i - 1].abs() < v[i].abs();
        bool fall = j == n - 1 || v[j + 1].abs() < v[i].abs();
        bool interior_ok = i > 0 && j < n - 1;
        bool boundary_ok = (i == 0 && j < n - 1 && fall) || (j == n - 1 && i > 0 && rise);
        if ((interior_ok && rise && fall) || boundary_ok)
            if (!v[i].is_zero()) maxima.push_back(i);
        i = j + 1;
    }

    // keep near-maximal grid extrema
    XReal frac = XReal(1, 40) - XReal::from_double(tolerance_fraction, 40);
    XReal thresh = dmax * frac;
    std::vector<size_t> kept;
    for (size_t m : maxima)
        if (v[m].abs() >= thresh) kept.push_back(m);

    for (size_t t = 1; t < kept.size(); ++t)
        if (kept[t] - kept[t - 1] < 3)
            throw ResolutionError(
                "equioscillation_report: adjacent extrema separated by fewer than "
                "3 samples; refine the grid");

    // the x -> -inf limit -alpha0 always joins the list as a virtual
    // extremum; the flag records whether it reaches the near-maximal band.
    // For an equioscillating curve it sits at the sup level, which pins the
    // uniformity ratio at ~1; a perturbed curve leaves it orders below.
    XReal limit = curve.set.alpha0.neg();
    rep.includes_infinity_limit = !limit.is_zero() && limit.abs() >= thresh;
    if (!limit.is_zero()) rep.extrema.push_back({XReal(0, 30), limit, true});
    for (size_t m : kept) rep.extrema.push_back({curve.xs[m], v[m], false});

    XReal lo_level, hi_level;
    bool first = true;
    for (const auto& e : rep.extrema) {
        XReal a = e.value.abs();
        if (a.is_zero()) continue;
        if (first || a < lo_level) lo_level = a;
        if (first || a > hi_level) hi_level = a;
        first = false;
    }
    rep.level_uniformity = first ? XReal(1, 30) : hi_level / lo_level;

    int blocks = 0, last_sign = 0;
    for (const auto& e : rep.extrema) {
        int s = e.value.sign();
        if (s == 0) continue;
        if (s != last_sign) { ++blocks; last_sign = s; }
    }
    rep.alternation_count = blocks;
    return rep;
}

HalphenResult halphen_ratio(const CoefficientSet& a, const CoefficientSet& b,
                            const Grid& grid, int digits) {
    if (a.order > b.order)
        throw DomainError("halphen_ratio: first set must not have the higher order");
    HalphenResult r;
    r.sup_a = sup_error_over(a, grid, digits);
    r.sup_b = sup_error_over(b, grid, digits);
    r.ratio = r.sup_a / r.sup_b;
    XReal h = XReal::parse("9.28902549", 40);
    r.reference = XReal(1, 40);
    for (int i = 0; i < b.order - a.order; ++i) r.reference = r.reference * h;
    return r;
}

} // namespace cram
