#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cram/errcurve.hpp"

namespace cram {

/// First-order estimate of |r(z) - r~(z)| from coefficient perturbations:
/// |a0 - a0~| + sum over all k poles of |a_j| |th_j - th_j~| / |z - th_j|^2
///                                    + |a_j - a_j~| / |z - th_j|.
/// Denominators use the base set's poles.  z must stay farther than 1e-3
/// from every base pole.
XReal eq6_bound(const CoefficientSet& base, const CoefficientSet& perturbed,
                const XComplex& z);

struct PerturbationReport {
    std::string base_label, perturbed_label;
    Grid grid;
    std::vector<XReal> xs;
    std::vector<XReal> measured;   // |r(x) - r~(x)| per point
    std::vector<XReal> bound;      // eq6_bound per point
    XReal max_measured, max_bound;
};

/// Compare the set against its own digit truncation over the grid.
PerturbationReport truncation_experiment(const CoefficientSet& set, int digits_kept,
                                         const Grid& grid, int digits = 40);

struct ComplexGrid {
    std::vector<XReal> re_axis, im_axis;
    // row-major [i_im][i_re]; masked cells carry no value
    std::vector<double> log10diff;
    std::vector<uint8_t> masked;
    long nre = 0, nim = 0;
    std::vector<XComplex> pole_markers;
};

/// log10 |r(z) - r~(z)| over a rectangular complex window; cells within 1e-6
/// of a pole (or with exactly zero difference) are masked.
ComplexGrid complex_grid_diff(const CoefficientSet& base,
                              const CoefficientSet& perturbed, const XReal& re_lo,
                              const XReal& re_hi, const XReal& im_lo,
                              const XReal& im_hi, long nre, long nim,
                              int digits = 32);

} // namespace cram
