#pragma once

#include "cram/xreal.hpp"

namespace cram {

/// Complex number over XReal; both components share one digit budget.
struct XComplex {
    XReal re, im;

    XComplex() = default;
    XComplex(XReal r, XReal i) : re(std::move(r)), im(std::move(i)) {}
    explicit XComplex(const XReal& r) : re(r), im(XReal(0, r.digits())) {}

    static XComplex parse(std::string_view re_s, std::string_view im_s, int digits) {
        return {XReal::parse(re_s, digits), XReal::parse(im_s, digits)};
    }

    int digits() const { return std::max(re.digits(), im.digits()); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }

    XComplex conj() const { return {re, im.neg()}; }
    XComplex neg() const { return {re.neg(), im.neg()}; }
    XComplex with_digits(int d) const { return {re.with_digits(d), im.with_digits(d)}; }
    XComplex round_sig(int d) const { return {re.round_sig(d), im.round_sig(d)}; }

    XReal norm2() const { return re * re + im * im; }   // |z|^2
    XReal abs() const { return norm2().sqrt(); }

    friend XComplex operator+(const XComplex& a, const XComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend XComplex operator-(const XComplex& a, const XComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend XComplex operator*(const XComplex& a, const XComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend XComplex operator*(const XReal& a, const XComplex& b) {
        return {a * b.re, a * b.im};
    }
    friend XComplex operator/(const XComplex& a, const XComplex& b) {
        if (b.is_zero()) throw DomainError("XComplex: division by zero");
        XReal n = b.norm2();
        XComplex t = a * b.conj();
        return {t.re / n, t.im / n};
    }
    friend bool operator==(const XComplex& a, const XComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const XComplex& a, const XComplex& b) { return !(a == b); }

    std::string str(int d) const { return re.str(d) + (im.sign() < 0 ? " - " : " + ") + im.abs().str(d) + "i"; }
};

} // namespace cram
