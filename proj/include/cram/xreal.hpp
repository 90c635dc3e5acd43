#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "cram/errors.hpp"

namespace cram {

/// Extended-precision real number with decimal semantics.
///
/// A value is sign * significand * 10^exp10 where the significand is an
/// unsigned integer held in base-1e9 limbs (little endian).  digits() is the
/// working precision in significant decimal digits; every arithmetic result
/// is rounded back to the wider of the two operand budgets, half away from
/// zero, so results carry relative error <= 10^(1-digits).
///
/// Values are immutable once constructed and trivially copyable; all
/// operations are pure functions and safe to call concurrently.
class XReal {
public:
    static constexpr int kMinDigits = 30;
    static constexpr int kMaxDigits = 256;
    static constexpr int kDefaultDigits = 64;

    XReal() = default;                                 // exact zero, default budget
    explicit XReal(long long v, int digits = kDefaultDigits);

    // copies move only the live limbs, not the whole capacity
    XReal(const XReal& o)
        : sign_(o.sign_), digits_(o.digits_), nlimbs_(o.nlimbs_), exp10_(o.exp10_) {
        for (int i = 0; i < nlimbs_; ++i) limb_[i] = o.limb_[i];
    }
    XReal& operator=(const XReal& o) {
        sign_ = o.sign_;
        digits_ = o.digits_;
        nlimbs_ = o.nlimbs_;
        exp10_ = o.exp10_;
        for (int i = 0; i < nlimbs_; ++i) limb_[i] = o.limb_[i];
        return *this;
    }

    /// Parse a decimal literal: optional sign, digits with optional '.',
    /// optional e/E exponent.  Throws ParseError on malformed input and
    /// DomainError when digits is outside [30, 256].
    static XReal parse(std::string_view text, int digits = kDefaultDigits);

    int digits() const { return digits_; }
    XReal with_digits(int digits) const;               // re-round to a new budget

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }
    XReal neg() const;
    XReal abs() const;

    /// floor(log10|x|): 0 for values in [1,10), -1 for [0.1,1) etc.
    /// Throws DomainError for zero.
    long long mag10() const;

    /// Round to d significant decimal digits, half away from zero.  The
    /// working budget is unchanged; only the stored value is coarsened.
    XReal round_sig(int d) const;

    /// Exact scaling by a power of ten.
    XReal scaled_pow10(long long e) const;

    /// Canonical form with exactly d significant digits: "-D.DD...De-14".
    std::string str(int d) const;
    /// All stored digits, trailing zeros trimmed.
    std::string str() const;

    double to_double() const;                          // approximate, clamped

    friend XReal operator+(const XReal& a, const XReal& b);
    friend XReal operator-(const XReal& a, const XReal& b);
    friend XReal operator*(const XReal& a, const XReal& b);
    friend XReal operator/(const XReal& a, const XReal& b);
    XReal operator-() const { return neg(); }

    /// Exact three-way comparison (never rounds).
    static int cmp(const XReal& a, const XReal& b);
    friend bool operator==(const XReal& a, const XReal& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const XReal& a, const XReal& b) { return cmp(a, b) != 0; }
    friend bool operator<(const XReal& a, const XReal& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const XReal& a, const XReal& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const XReal& a, const XReal& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const XReal& a, const XReal& b) { return cmp(a, b) >= 0; }

    XReal sqrt() const;                                // Newton, needs x >= 0

    /// Quotient by a small positive integer (0 < d < 1e9).
    XReal div_small(uint32_t d) const;

    static XReal pow10(long long e, int digits);       // exact 10^e
    static XReal two_pow(long long m, int digits);     // 2^m at the given budget
    static XReal from_double(double v, int digits);    // ~16 correct digits

    static XReal ln2(int digits);                      // from sum 1/(n*2^n)
    static XReal ln10(int digits);                     // 3*ln2 + sum 1/(n*5^n)

private:
    // Capacity covers the 256-digit public cap plus internal guard digits:
    // operands stay <= ~35 limbs, products <= 70, aligned additions <= 75.
    static constexpr int kMaxLimbs = 80;
    static constexpr uint32_t kLimbBase = 1000000000u;
    static constexpr int kLimbDigits = 9;
    static constexpr int kHardCapDigits = 300;

    int8_t sign_ = 0;          // -1, 0, +1
    int16_t digits_ = kDefaultDigits;
    int32_t nlimbs_ = 0;
    int64_t exp10_ = 0;
    uint32_t limb_[kMaxLimbs];  // only the first nlimbs_ entries are live

    void normalize();          // strip zero limbs top and bottom
    void round_to(int d);      // in-place significand rounding
    int dec_len() const;       // significant decimal digits of the significand
    void shift_up(int dec);    // significand *= 10^dec, exp10 -= dec

    static XReal add_signed(const XReal& a, const XReal& b, bool negate_b);
    static int cmp_aligned_mag(const XReal& a, const XReal& b);
    static XReal recip(const XReal& b, int digits);
    static XReal from_parts(int sgn, const uint32_t* limbs, int n, long long exp10,
                            int digits);
    static XReal from_double_mantissa(double m, long long extra_exp10, int digits);

    friend XReal exp(const XReal& x, int digits);
    friend XReal ln(const XReal& a, int digits);
};

/// e^x with relative error <= 10^(2-digits).  Guarded to |x| <= 1e6; out of
/// range or non-finite inputs throw DomainError.  Argument reduction
/// x = m*ln2 + s with |s| <= ln2/2, then a Taylor sum on s whose term count
/// keeps the truncated tail below 10^(-digits-2).
XReal exp(const XReal& x, int digits);
inline XReal exp(const XReal& x) { return exp(x, x.digits()); }

/// Natural log by Newton iteration on exp; a > 0.
XReal ln(const XReal& a, int digits);

} // namespace cram
