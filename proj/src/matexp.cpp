#include "cram/matexp.hpp"

#include <algorithm>

namespace cram {

namespace {

int matrix_digits(const ComplexMatrix& m) {
    int d = XReal::kMinDigits;
    for (const auto& e : m.a) d = std::max(d, e.digits());
    return d;
}

XReal inf_norm(const ComplexMatrix& m) {
    XReal best(0, 30);
    for (int i = 0; i < m.n; ++i) {
        XReal row(0, 30);
        for (int j = 0; j < m.n; ++j) row = row + m.at(i, j).abs();
        if (row > best) best = row;
    }
    return best;
}

XReal inf_norm(const std::vector<XComplex>& v) {
    XReal best(0, 30);
    for (const auto& e : v) {
        XReal a = e.abs();
        if (a > best) best = a;
    }
    return best;
}

} // namespace

std::vector<XComplex> lu_solve(const ComplexMatrix& M, const std::vector<XComplex>& b) {
    const int n = M.n;
    if (n < 1 || (int)b.size() != n)
        throw DomainError("lu_solve: dimension mismatch");
    const int digits = matrix_digits(M);

    ComplexMatrix lu = M;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;

    for (int col = 0; col < n; ++col) {
        int piv = -1;
        XReal best(0, 30);
        for (int i = col; i < n; ++i) {
            XReal m2 = lu.at(i, col).norm2();
            if (piv < 0 || m2 > best) { piv = i; best = m2; }
        }
        if (best.is_zero())
            throw SolverError("lu_solve: singular matrix (zero pivot column " +
                              std::to_string(col) + ")");
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(lu.at(col, j), lu.at(piv, j));
            std::swap(perm[col], perm[piv]);
        }
        for (int i = col + 1; i < n; ++i) {
            XComplex f = lu.at(i, col) / lu.at(col, col);
            lu.at(i, col) = f;
            for (int j = col + 1; j < n; ++j)
                lu.at(i, j) = lu.at(i, j) - f * lu.at(col, j);
        }
    }

    // Ly = Pb, then Ux = y
    std::vector<XComplex> x(b.size());
    for (int i = 0; i < n; ++i) x[(size_t)i] = b[(size_t)perm[(size_t)i]];
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j)
            x[(size_t)i] = x[(size_t)i] - lu.at(i, j) * x[(size_t)j];
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j)
            x[(size_t)i] = x[(size_t)i] - lu.at(i, j) * x[(size_t)j];
        x[(size_t)i] = x[(size_t)i] / lu.at(i, i);
    }

    // residual certificate
    XReal resid(0, 30);
    for (int i = 0; i < n; ++i) {
        XComplex acc = b[(size_t)i].neg();
        for (int j = 0; j < n; ++j) acc = acc + M.at(i, j) * x[(size_t)j];
        XReal a = acc.abs();
        if (a > resid) resid = a;
    }
    XReal cap = XReal(n, 30) * XReal::pow10(-digits + 8, 30) * inf_norm(M) * inf_norm(x);
    if (!resid.is_zero() && resid > cap)
        throw SolverError("lu_solve: residual " + resid.str(3) +
                          " exceeds the certificate bound " + cap.str(3));
    return x;
}

std::vector<XReal> cram_apply(const RealMatrix& A, const XReal& t,
                              const std::vector<XReal>& x0,
                              const CoefficientSet& set, bool verify_conjugate) {
    const int n = A.n;
    if ((int)x0.size() != n) throw DomainError("cram_apply: x0 length mismatch");
    if (t.sign() < 0) throw DomainError("cram_apply: t must be >= 0");
    const int digits = set.digits();

    // B = A t, complex copy
    ComplexMatrix base(n, digits);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            base.at(i, j).re = (A.at(i, j).with_digits(digits) * t.with_digits(digits));

    std::vector<XComplex> rhs;
    rhs.reserve((size_t)n);
    for (const auto& v : x0) rhs.emplace_back(v.with_digits(digits), XReal(0, digits));

    std::vector<XComplex> acc((size_t)n, XComplex(XReal(0, digits), XReal(0, digits)));
    for (size_t j = 0; j < set.poles.size(); ++j) {
        const XComplex th = set.poles[j].with_digits(digits);
        ComplexMatrix shifted = base;
        for (int i = 0; i < n; ++i)
            shifted.at(i, i) = shifted.at(i, i) - th;
        std::vector<XComplex> y = lu_solve(shifted, rhs);
        const XComplex al = set.residues[j].with_digits(digits);
        for (int i = 0; i < n; ++i) acc[(size_t)i] = acc[(size_t)i] + al * y[(size_t)i];

        if (verify_conjugate) {
            // the conjugate-pole solve must mirror y, so the imaginary parts
            // of the full pair sum cancel
            ComplexMatrix shifted_c = base;
            for (int i = 0; i < n; ++i)
                shifted_c.at(i, i) = shifted_c.at(i, i) - th.conj();
            std::vector<XComplex> yc = lu_solve(shifted_c, rhs);
            XReal cap = XReal(n, 30) * XReal::pow10(-digits + 10, 30) * inf_norm(rhs);
            for (int i = 0; i < n; ++i) {
                XReal im = (al * y[(size_t)i] + al.conj() * yc[(size_t)i]).im.abs();
                if (!im.is_zero() && im > cap)
                    throw SolverError(
                        "cram_apply: conjugate-pair imaginary residue " + im.str(3) +
                        " above bound at pole " + std::to_string(j));
            }
        }
    }

    std::vector<XReal> out;
    out.reserve((size_t)n);
    for (int i = 0; i < n; ++i)
        out.push_back(set.alpha0.with_digits(digits) * x0[(size_t)i].with_digits(digits) +
                      (acc[(size_t)i].re + acc[(size_t)i].re));
    return out;
}

RealMatrix chain_matrix(const DecayChain& chain, int digits) {
    const int n = (int)chain.lambdas.size();
    if (n < 1) throw DomainError("chain_matrix: empty chain");
    for (int i = 0; i < n; ++i) {
        if (chain.lambdas[(size_t)i].sign() <= 0)
            throw DomainError("chain_matrix: decay constants must be positive");
        for (int j = i + 1; j < n; ++j)
            if (chain.lambdas[(size_t)i] == chain.lambdas[(size_t)j])
                throw DomainError("chain_matrix: decay constants must be distinct");
    }
    RealMatrix A(n, digits);
    for (int i = 0; i < n; ++i) {
        A.at(i, i) = chain.lambdas[(size_t)i].with_digits(digits).neg();
        if (i + 1 < n) A.at(i + 1, i) = chain.lambdas[(size_t)i].with_digits(digits);
    }
    return A;
}

std::vector<XReal> bateman_oracle(const DecayChain& chain, const XReal& t,
                                  const std::vector<XReal>* x0, int digits) {
    const int n = (int)chain.lambdas.size();
    if (n < 1) throw DomainError("bateman_oracle: empty chain");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (chain.lambdas[(size_t)i] == chain.lambdas[(size_t)j])
                throw DomainError("bateman_oracle: repeated decay constant "
                                  "(degenerate chain)");
    if (x0 && (int)x0->size() != n)
        throw DomainError("bateman_oracle: x0 length mismatch");

    std::vector<XReal> lam;
    for (const auto& l : chain.lambdas) lam.push_back(l.with_digits(digits));
    std::vector<XReal> expo;
    for (const auto& l : lam) expo.push_back(exp((l * t.with_digits(digits)).neg(), digits));

    // contribution of a unit start at nuclide m to nuclide i >= m
    auto unit_term = [&](int m, int i) {
        // prod_{m <= j < i} lambda_j * sum_{m <= j <= i} e^{-l_j t} /
        //     prod_{m <= p <= i, p != j} (l_p - l_j)
        XReal pref(1, digits);
        for (int j = m; j < i; ++j) pref = pref * lam[(size_t)j];
        XReal sum(0, digits);
        for (int j = m; j <= i; ++j) {
            XReal den(1, digits);
            for (int p = m; p <= i; ++p)
                if (p != j) den = den * (lam[(size_t)p] - lam[(size_t)j]);
            sum = sum + expo[(size_t)j] / den;
        }
        return pref * sum;
    };

    std::vector<XReal> out((size_t)n, XReal(0, digits));
    for (int i = 0; i < n; ++i) {
        if (x0 == nullptr) {
            out[(size_t)i] = unit_term(0, i);
        } else {
            for (int m = 0; m <= i; ++m) {
                const XReal& amount = (*x0)[(size_t)m];
                if (amount.is_zero()) continue;
                out[(size_t)i] =
                    out[(size_t)i] + amount.with_digits(digits) * unit_term(m, i);
            }
        }
    }
    return out;
}

std::vector<XReal> hermitian_oracle(const RealMatrix& A, const XReal& t,
                                    const std::vector<XReal>& x0) {
    const int n = A.n;
    if ((int)x0.size() != n) throw DomainError("hermitian_oracle: x0 length mismatch");
    int digits = XReal::kMinDigits;
    for (const auto& e : A.a) digits = std::max(digits, e.digits());

    XReal scale(0, 30);
    for (const auto& e : A.a)
        if (e.abs() > scale) scale = e.abs();
    if (scale < XReal(1, 30)) scale = XReal(1, 30);
    XReal sym_tol = scale * XReal::pow10(-digits + 8, 30);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if ((A.at(i, j) - A.at(j, i)).abs() > sym_tol)
                throw DomainError("hermitian_oracle: matrix is not symmetric");

    // cyclic Jacobi
    RealMatrix m = A;
    for (auto& e : m.a) e = e.with_digits(digits);
    RealMatrix v(n, digits);
    for (int i = 0; i < n; ++i) v.at(i, i) = XReal(1, digits);

    XReal fro2(0, digits);
    for (const auto& e : m.a) fro2 = fro2 + e * e;
    XReal off_target = XReal::pow10(-digits + 10, 30) * fro2.sqrt();
    if (off_target < XReal::pow10(-digits + 10, 30))
        off_target = XReal::pow10(-digits + 10, 30);
    XReal off_target2 = off_target * off_target;

    const XReal one(1, digits), two(2, digits);
    for (int sweep = 0; sweep < 60; ++sweep) {
        XReal off2(0, digits);
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q)
                off2 = off2 + m.at(p, q) * m.at(p, q);
        if (off2 + off2 <= off_target2) {
            std::vector<XReal> out((size_t)n, XReal(0, digits));
            // V exp(D t) V^T x0
            std::vector<XReal> proj((size_t)n, XReal(0, digits));
            for (int i = 0; i < n; ++i) {
                XReal acc(0, digits);
                for (int r = 0; r < n; ++r)
                    acc = acc + v.at(r, i) * x0[(size_t)r].with_digits(digits);
                proj[(size_t)i] = acc * exp(m.at(i, i) * t.with_digits(digits), digits);
            }
            for (int r = 0; r < n; ++r) {
                XReal acc(0, digits);
                for (int i = 0; i < n; ++i) acc = acc + v.at(r, i) * proj[(size_t)i];
                out[(size_t)r] = acc;
            }
            return out;
        }
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                XReal apq = m.at(p, q);
                if (apq.is_zero()) continue;
                XReal tau = (m.at(q, q) - m.at(p, p)) / (apq + apq);
                XReal root = (one + tau * tau).sqrt();
                XReal tval = tau.sign() >= 0 ? one / (tau + root) : (one / (tau - root));
                XReal c = one / (one + tval * tval).sqrt();
                XReal s = tval * c;
                XReal app = m.at(p, p), aqq = m.at(q, q);
                m.at(p, p) = app - tval * apq;
                m.at(q, q) = aqq + tval * apq;
                m.at(p, q) = XReal(0, digits);
                m.at(q, p) = XReal(0, digits);
                for (int i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    XReal aip = m.at(i, p), aiq = m.at(i, q);
                    m.at(i, p) = c * aip - s * aiq;
                    m.at(p, i) = m.at(i, p);
                    m.at(i, q) = s * aip + c * aiq;
                    m.at(q, i) = m.at(i, q);
                }
                for (int i = 0; i < n; ++i) {
                    XReal vip = v.at(i, p), viq = v.at(i, q);
                    v.at(i, p) = c * vip - s * viq;
                    v.at(i, q) = s * vip + c * viq;
                }
            }
        }
    }
    throw ConvergenceError("hermitian_oracle: Jacobi sweeps did not converge");
}

} // namespace cram
