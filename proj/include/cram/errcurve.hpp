#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cram/coeffs.hpp"

namespace cram {

/// One stretch of sample abscissae.  Log segments place |x| geometrically
/// between |lo| and |hi|; linear segments are uniform.  Points are generated
/// at 30 digits, ascending, endpoints pinned exactly.
struct GridSegment {
    enum Kind { Log, Linear };
    Kind kind = Linear;
    XReal lo, hi;
    long n = 0;
};

struct Grid {
    std::vector<GridSegment> segments;

    long size() const;
    void for_each(const std::function<void(long, const XReal&)>& fn) const;
    std::vector<XReal> materialize() const;
    std::string describe() const;

    /// Factories; both validate lo < hi <= 0 (and hi < 0 for log).
    static Grid log(const XReal& lo, const XReal& hi, long n);
    static Grid linear(const XReal& lo, const XReal& hi, long n);
    /// Log-spaced on [lo, join] glued to linear on [join, 0]; the sampling
    /// protocol used by the sup-error and equioscillation checks.
    static Grid hybrid(const XReal& lo, const XReal& join, long n_log, long n_lin);
    static Grid standard_protocol();   // hybrid(-500, -1e-3, 90000, 10000)
};

Grid make_grid(GridSegment::Kind kind, const XReal& lo, const XReal& hi, long n);

/// Sampled e^x - r(x) over a grid; keeps a copy of the coefficient set so the
/// sup refinement can re-evaluate between grid points.
struct ErrorCurve {
    Grid grid;
    std::vector<XReal> xs;
    std::vector<XReal> values;       // e^x - r(x)
    CoefficientSet set;
    int digits = 0;
    std::string set_label;
};

/// Requires digits >= 32.
ErrorCurve sample_error(const CoefficientSet& set, const Grid& grid, int digits);

/// Max |value| over the curve, refined by three golden-section steps inside
/// the bracket around the discrete argmax.  Never below the discrete max.
XReal sup_error(const ErrorCurve& curve);

/// Streaming variant (no curve materialization).
XReal sup_error_over(const CoefficientSet& set, const Grid& grid, int digits);

struct Extremum {
    XReal x;                         // meaningless when at_infinity
    XReal value;
    bool at_infinity = false;
};

struct EquioscillationReport {
    std::vector<Extremum> extrema;   // near-maximal, ordered by x (limit first)
    int alternation_count = 0;       // sign blocks over the extrema sequence
    XReal sup;
    XReal level_uniformity;          // max/min over all detected local maxima
    bool includes_infinity_limit = false;
};

/// Local |value| maxima within (1 - tolerance_fraction) of the sup, plus the
/// analytic x -> -inf limit -alpha0 as a virtual extremum.  Throws
/// ResolutionError when two near-maximal extrema sit closer than 3 samples.
EquioscillationReport equioscillation_report(const ErrorCurve& curve,
                                             double tolerance_fraction = 0.1);

struct HalphenResult {
    XReal sup_a, sup_b;
    XReal ratio;                     // sup_a / sup_b
    XReal reference;                 // H^(order_b - order_a), H = 9.28902549
};

HalphenResult halphen_ratio(const CoefficientSet& a, const CoefficientSet& b,
                            const Grid& grid, int digits);

} // namespace cram
