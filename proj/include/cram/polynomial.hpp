#pragma once

#include <vector>

#include "cram/xcomplex.hpp"

namespace cram {

/// Real-coefficient polynomial, ascending degree, nonzero leading term.
struct Polynomial {
    std::vector<XReal> coeffs;

    Polynomial() = default;
    explicit Polynomial(std::vector<XReal> c) : coeffs(std::move(c)) {}

    int degree() const { return (int)coeffs.size() - 1; }
    bool empty() const { return coeffs.empty(); }
    const XReal& lead() const { return coeffs.back(); }

    XReal eval(const XReal& x) const {          // Horner
        if (coeffs.empty()) throw DomainError("Polynomial: empty");
        XReal acc = coeffs.back();
        for (size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * x + coeffs[i];
        return acc;
    }

    XComplex eval(const XComplex& z) const {
        if (coeffs.empty()) throw DomainError("Polynomial: empty");
        XComplex acc{coeffs.back(), XReal(0, coeffs.back().digits())};
        for (size_t i = coeffs.size() - 1; i-- > 0;)
            acc = acc * z + XComplex(coeffs[i]);
        return acc;
    }

    /// Horner on absolute values: sum |c_i| t^i, an evaluation-scale bound.
    XReal eval_abs(const XReal& t) const {
        if (coeffs.empty()) throw DomainError("Polynomial: empty");
        XReal acc = coeffs.back().abs();
        for (size_t i = coeffs.size() - 1; i-- > 0;)
            acc = acc * t + coeffs[i].abs();
        return acc;
    }

    Polynomial derivative() const {
        if (coeffs.size() <= 1) return Polynomial{{XReal(0, 30)}};
        std::vector<XReal> d;
        d.reserve(coeffs.size() - 1);
        for (size_t i = 1; i < coeffs.size(); ++i)
            d.push_back(XReal((long long)i, coeffs[i].digits()) * coeffs[i]);
        return Polynomial{std::move(d)};
    }
};

} // namespace cram
