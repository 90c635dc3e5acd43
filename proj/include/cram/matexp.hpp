#pragma once

#include <vector>

#include "cram/coeffs.hpp"

namespace cram {

struct RealMatrix {
    int n = 0;
    std::vector<XReal> a;   // row-major, n*n

    RealMatrix() = default;
    RealMatrix(int dim, int digits)
        : n(dim), a((size_t)dim * (size_t)dim, XReal(0, digits)) {}
    XReal& at(int i, int j) { return a[(size_t)i * (size_t)n + (size_t)j]; }
    const XReal& at(int i, int j) const { return a[(size_t)i * (size_t)n + (size_t)j]; }
};

struct ComplexMatrix {
    int n = 0;
    std::vector<XComplex> a;

    ComplexMatrix() = default;
    ComplexMatrix(int dim, int digits)
        : n(dim), a((size_t)dim * (size_t)dim,
                    XComplex(XReal(0, digits), XReal(0, digits))) {}
    XComplex& at(int i, int j) { return a[(size_t)i * (size_t)n + (size_t)j]; }
    const XComplex& at(int i, int j) const {
        return a[(size_t)i * (size_t)n + (size_t)j];
    }
};

/// Dense complex LU solve with partial pivoting by modulus; certifies the
/// result with the residual bound ||Mx-b||_inf <= n 10^(-digits+8) ||M||_inf
/// ||x||_inf and throws SolverError on violation or a zero pivot column.
std::vector<XComplex> lu_solve(const ComplexMatrix& M, const std::vector<XComplex>& b);

/// exp(At) x0 by the partial-fraction form: alpha0 x0 + 2 Re sum_j alpha_j
/// (At - theta_j I)^{-1} x0 over the k/2 representative poles.  The
/// approximation quality contract assumes the eigenvalues of At lie near the
/// negative real axis; this is not checked.  When verify_conjugate is set
/// the conjugate systems are solved too and the imaginary part that the
/// real-part extraction discards is checked against
/// n 10^(-digits+10) ||x0||_inf.
std::vector<XReal> cram_apply(const RealMatrix& A, const XReal& t,
                              const std::vector<XReal>& x0,
                              const CoefficientSet& set,
                              bool verify_conjugate = false);

/// Sequential decay chain: nuclide i feeds i+1 with rate lambdas[i]; rates
/// must be positive and pairwise distinct.
struct DecayChain {
    std::vector<XReal> lambdas;
};

/// Lower-bidiagonal generator: A[i][i] = -lambda_i, A[i+1][i] = +lambda_i.
RealMatrix chain_matrix(const DecayChain& chain, int digits);

/// Closed-form chain solution at time t (x0 defaults to e_1); general x0 by
/// superposition over sub-chains.
std::vector<XReal> bateman_oracle(const DecayChain& chain, const XReal& t,
                                  const std::vector<XReal>* x0 = nullptr,
                                  int digits = XReal::kDefaultDigits);

/// exp(At) x0 for symmetric A via cyclic Jacobi diagonalization at extended
/// precision (off-diagonal norm driven under 10^(-digits+10)).
std::vector<XReal> hermitian_oracle(const RealMatrix& A, const XReal& t,
                                    const std::vector<XReal>& x0);

} // namespace cram
