#pragma once

#include <vector>

#include "cram/errcurve.hpp"

namespace cram {

/// Least-squares recovery of residues (and optionally alpha0) for a fixed set
/// of poles: the evaluation formula is linear in [alpha0, Re a_j, Im a_j].
struct RefitProblem {
    std::vector<XComplex> poles;      // k/2 representatives, Im > 0
    Grid grid;                        // sample abscissae
    bool fit_alpha0 = true;
    XReal fixed_alpha0;               // used only when fit_alpha0 is false
    std::vector<XReal> weights;       // empty = unweighted; else >= 0 per point
    int digits = 40;
};

/// One design-matrix row at x: [1 (when fitting alpha0), then per pole j the
/// pair 2 Re(1/(x-theta_j)), -2 Im(1/(x-theta_j))], so that
/// row . [alpha0, Re a_1, Im a_1, ...] equals the rational function at x.
std::vector<XReal> design_row(const std::vector<XComplex>& poles, const XReal& x,
                              bool fit_alpha0 = true);

/// Householder QR on the (weighted) design matrix, processed in row blocks at
/// extended precision; throws Error when the diagonal condition estimate
/// exceeds 10^(digits-10).  Returns the fitted set with the given poles.
CoefficientSet lsq_refit(const RefitProblem& problem);

struct RefitExperiment {
    XReal naive_sup;     // truncated poles + truncated residues
    XReal mixed_sup;     // truncated poles + exact residues
    XReal refit_sup;     // truncated poles + least-squares residues
    CoefficientSet refit_set;
};

/// The three sup errors compared on the standard protocol grid (or a caller
/// supplied one); the fit uses n_points log-uniform samples on [-1e3, -1e-10].
RefitExperiment refit_experiment(const CoefficientSet& set, int digits_kept,
                                 long n_points, int digits = 40,
                                 const Grid* protocol = nullptr);

} // namespace cram
