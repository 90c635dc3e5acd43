#include "cram/refit.hpp"

#include <algorithm>

#include "cram/ratfun.hpp"

namespace cram {

std::vector<XReal> design_row(const std::vector<XComplex>& poles, const XReal& x,
                              bool fit_alpha0) {
    int digits = x.digits();
    std::vector<XReal> row;
    row.reserve((fit_alpha0 ? 1 : 0) + 2 * poles.size());
    if (fit_alpha0) row.push_back(XReal(1, digits));
    for (const auto& th : poles) {
        XReal dre = x - th.re;
        XReal n2 = dre * dre + th.im * th.im;
        XReal ure = dre / n2;                    // Re 1/(x - theta)
        XReal uim = th.im / n2;                  // Im 1/(x - theta) = +theta.im/n2
        row.push_back(ure + ure);
        row.push_back((uim + uim).neg());
    }
    return row;
}

namespace {

// In-place Householder triangularization of the stacked block [R; B] with the
// stacked rhs, leaving the updated R factor in the top ncols rows.
void triangularize(std::vector<std::vector<XReal>>& m, std::vector<XReal>& rhs,
                   int ncols, int digits) {
    const int nrows = (int)m.size();
    const XReal zero(0, digits);
    for (int j = 0; j < ncols; ++j) {
        XReal norm2 = zero;
        for (int i = j; i < nrows; ++i) norm2 = norm2 + m[(size_t)i][(size_t)j] * m[(size_t)i][(size_t)j];
        if (norm2.is_zero()) continue;           // column already annihilated
        XReal sigma = norm2.sqrt();
        XReal& pivot = m[(size_t)j][(size_t)j];
        XReal alpha = pivot.sign() > 0 ? sigma.neg() : sigma;
        // v = column with v_j = pivot - alpha; H = I - 2 v v^T / (v^T v)
        XReal vj = pivot - alpha;
        XReal vtv = norm2 - pivot * pivot + vj * vj;
        if (vtv.is_zero()) continue;
        for (int c = j + 1; c < ncols; ++c) {
            XReal dot = vj * m[(size_t)j][(size_t)c];
            for (int i = j + 1; i < nrows; ++i)
                dot = dot + m[(size_t)i][(size_t)j] * m[(size_t)i][(size_t)c];
            XReal f = (dot + dot) / vtv;
            m[(size_t)j][(size_t)c] = m[(size_t)j][(size_t)c] - f * vj;
            for (int i = j + 1; i < nrows; ++i)
                m[(size_t)i][(size_t)c] =
                    m[(size_t)i][(size_t)c] - f * m[(size_t)i][(size_t)j];
        }
        XReal dot = vj * rhs[(size_t)j];
        for (int i = j + 1; i < nrows; ++i)
            dot = dot + m[(size_t)i][(size_t)j] * rhs[(size_t)i];
        XReal f = (dot + dot) / vtv;
        rhs[(size_t)j] = rhs[(size_t)j] - f * vj;
        for (int i = j + 1; i < nrows; ++i)
            rhs[(size_t)i] = rhs[(size_t)i] - f * m[(size_t)i][(size_t)j];
        pivot = alpha;
        for (int i = j + 1; i < nrows; ++i) m[(size_t)i][(size_t)j] = zero;
    }
}

} // namespace

CoefficientSet lsq_refit(const RefitProblem& problem) {
    const int digits = std::max(problem.digits, 40);
    const size_t half = problem.poles.size();
    if (half == 0) throw DomainError("lsq_refit: no poles");
    for (const auto& th : problem.poles)
        if (th.im.sign() <= 0)
            throw DomainError("lsq_refit: poles must have Im > 0");
    const int ncols = (problem.fit_alpha0 ? 1 : 0) + 2 * (int)half;
    const long npts = problem.grid.size();
    if (!problem.weights.empty() && (long)problem.weights.size() != npts)
        throw DomainError("lsq_refit: weights length must match the grid");
    long effective = 0;
    if (problem.weights.empty()) effective = npts;
    else
        for (const auto& w : problem.weights) {
            if (w.sign() < 0) throw DomainError("lsq_refit: negative weight");
            if (w.sign() > 0) ++effective;
        }
    if (effective < ncols)
        throw DomainError("lsq_refit: fewer weighted points than unknowns");

    std::vector<XComplex> poles;
    for (const auto& th : problem.poles) poles.push_back(th.with_digits(digits));

    const int block = 512;
    const XReal zero(0, digits);
    // R factor and transformed rhs live in the top ncols rows across blocks
    std::vector<std::vector<XReal>> m((size_t)ncols,
                                      std::vector<XReal>((size_t)ncols, zero));
    std::vector<XReal> rhs((size_t)ncols, zero);

    std::vector<std::vector<XReal>> stage;
    std::vector<XReal> stage_rhs;
    auto flush = [&]() {
        if (stage.empty()) return;
        std::vector<std::vector<XReal>> stacked = m;
        std::vector<XReal> srhs = rhs;
        for (auto& row : stage) stacked.push_back(std::move(row));
        for (auto& v : stage_rhs) srhs.push_back(std::move(v));
        triangularize(stacked, srhs, ncols, digits);
        for (int i = 0; i < ncols; ++i) {
            m[(size_t)i] = stacked[(size_t)i];
            rhs[(size_t)i] = srhs[(size_t)i];
        }
        stage.clear();
        stage_rhs.clear();
    };

    long idx = 0;
    problem.grid.for_each([&](long i, const XReal& xg) {
        XReal x = xg.with_digits(digits);
        XReal w(1, digits);
        if (!problem.weights.empty()) {
            w = problem.weights[(size_t)i].with_digits(digits);
            if (w.is_zero()) return;
            w = w.sqrt();
        }
        std::vector<XReal> row = design_row(poles, x, problem.fit_alpha0);
        XReal y = exp(x, digits);
        if (!problem.fit_alpha0) y = y - problem.fixed_alpha0.with_digits(digits);
        if (!problem.weights.empty()) {
            for (auto& e : row) e = e * w;
            y = y * w;
        }
        stage.push_back(std::move(row));
        stage_rhs.push_back(y);
        if ((long)stage.size() >= block) flush();
        ++idx;
    });
    flush();
    (void)idx;

    // diagonal condition estimate
    XReal dmax = zero, dmin = zero;
    for (int j = 0; j < ncols; ++j) {
        XReal a = m[(size_t)j][(size_t)j].abs();
        if (j == 0 || a > dmax) dmax = a;
        if (j == 0 || a < dmin) dmin = a;
    }
    if (dmin.is_zero() || dmax / dmin > XReal::pow10(digits - 10, 30))
        throw Error("lsq_refit: design matrix is numerically rank deficient "
                    "(condition estimate above 10^(digits-10))");

    // back substitution
    std::vector<XReal> sol((size_t)ncols, zero);
    for (int i = ncols - 1; i >= 0; --i) {
        XReal acc = rhs[(size_t)i];
        for (int c = i + 1; c < ncols; ++c)
            acc = acc - m[(size_t)i][(size_t)c] * sol[(size_t)c];
        sol[(size_t)i] = acc / m[(size_t)i][(size_t)i];
    }

    CoefficientSet out;
    out.order = 2 * (int)half;
    out.label = "least-squares refit";
    size_t base = 0;
    if (problem.fit_alpha0) {
        out.alpha0 = sol[0];
        base = 1;
    } else {
        out.alpha0 = problem.fixed_alpha0.with_digits(digits);
    }
    out.poles = poles;
    for (size_t j = 0; j < half; ++j)
        out.residues.emplace_back(sol[base + 2 * j], sol[base + 2 * j + 1]);
    return out;
}

RefitExperiment refit_experiment(const CoefficientSet& set, int digits_kept,
                                 long n_points, int digits, const Grid* protocol_in) {
    CoefficientSet truncated = truncate_set(set, digits_kept);
    Grid protocol = protocol_in ? *protocol_in : Grid::standard_protocol();

    RefitExperiment out;
    out.naive_sup = sup_error_over(truncated, protocol, digits);

    CoefficientSet mixed;
    mixed.order = set.order;
    mixed.alpha0 = set.alpha0;
    mixed.poles = truncated.poles;
    mixed.residues = set.residues;
    mixed.label = set.label + " with poles truncated to " +
                  std::to_string(digits_kept) + " digits";
    out.mixed_sup = sup_error_over(mixed, protocol, digits);

    RefitProblem prob;
    prob.poles = truncated.poles;
    prob.grid = Grid::log(XReal::parse("-1e3", 30), XReal::parse("-1e-10", 30),
                          n_points);
    prob.fit_alpha0 = true;
    prob.digits = digits;
    out.refit_set = lsq_refit(prob);
    out.refit_sup = sup_error_over(out.refit_set, protocol, digits);
    return out;
}

} // namespace cram
