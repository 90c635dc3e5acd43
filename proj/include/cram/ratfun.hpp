#pragma once

#include <string>
#include <vector>

#include "cram/coeffs.hpp"
#include "cram/polynomial.hpp"

namespace cram {

/// Significant digits on which two values agree (relative), saturating at 99.
int agreement_digits(const XReal& a, const XReal& b);
int agreement_digits(const XComplex& a, const XComplex& b);

/// alpha0 + 2 Re sum_j alpha_j / (x - theta_j) over the k/2 representatives,
/// evaluated at max(set, x) working precision.
XReal eval_real(const CoefficientSet& set, const XReal& x);

/// Full sum over all k poles (representatives and conjugates).  Throws
/// PoleProximityError when z is within 10^(-digits+4) of any pole.
XComplex eval_complex(const CoefficientSet& set, const XComplex& z);

/// Monic real polynomial prod (x - theta) over all k poles, expanded in
/// complex arithmetic at `digits`; the imaginary residue of every coefficient
/// must stay below 10^(-digits+6) relative to the coefficient scale.
Polynomial denominator_from_poles(const CoefficientSet& set, int digits = 0);

/// Numerator recovered from the partial fractions:
/// p = alpha0 q + sum_j alpha_j prod_{i != j} (x - theta_i), real, degree <= k.
Polynomial numerator_from_pfd(const CoefficientSet& set, int digits = 0);

struct RootResult {
    std::vector<XComplex> roots;      // sorted by (Im desc, Re asc)
    std::vector<XReal> residuals;     // |p(root)| per root
    int iterations = 0;
};

/// Aberth-Ehrlich simultaneous iteration at `digits`; converged when
/// max |dz|/|z| < 10^(-digits+6), at most 200 sweeps.
RootResult find_roots(const Polynomial& poly, int digits);

struct ResidueResult {
    std::vector<XComplex> residues;   // p(theta)/q'(theta) per given pole
    XReal alpha0;                     // lead(p)/lead(q) if degrees match, else 0
};

ResidueResult residues_from_polys(const Polynomial& p, const Polynomial& q,
                                  const std::vector<XComplex>& poles);

struct RoundTripRow {
    std::string name;                 // "alpha0", "theta 3", "alpha 3", ...
    XComplex original;
    XComplex recomputed;
    int agree_digits = 0;
};

struct RoundTripReport {
    int order = 0;
    int digits = 0;
    std::vector<RoundTripRow> rows;
    int min_agree = 0;
};

/// set -> polynomials -> roots -> residues, then per-coefficient digit
/// agreement between the input set and the recomputed one.
RoundTripReport roundtrip_report(const CoefficientSet& set, int digits);

/// Digit-agreement table between two sets of the same order (no round trip).
RoundTripReport compare_sets(const CoefficientSet& a, const CoefficientSet& b);

} // namespace cram
