#pragma once

#include <random>
#include <string>

#include "cram/xcomplex.hpp"
#include "cram/xreal.hpp"

namespace testutil {

// Significant digits on which a and b agree (relative). Saturates at `cap`.
inline int agree_digits(const cram::XReal& a, const cram::XReal& b, int cap = 99) {
    using cram::XReal;
    cram::XReal d = (a - b).abs();
    if (d.is_zero()) return cap;
    cram::XReal ref = a.is_zero() ? b.abs() : a.abs();
    if (ref.is_zero()) return 0;
    long long ad = ref.mag10() - d.mag10();
    if (ad < 0) return 0;
    return (int)std::min<long long>(ad, cap);
}

inline int agree_digits(const cram::XComplex& a, const cram::XComplex& b, int cap = 99) {
    cram::XReal d = (a - b).abs();
    if (d.is_zero()) return cap;
    cram::XReal ref = a.abs();
    if (ref.is_zero()) return 0;
    long long ad = ref.mag10() - d.mag10();
    if (ad < 0) return 0;
    return (int)std::min<long long>(ad, cap);
}

// Random decimal literal with 1..20 significant digits and a modest exponent.
inline std::string random_decimal(std::mt19937_64& rng, int max_digits = 20,
                                  int exp_range = 12) {
    std::uniform_int_distribution<int> ndig(1, max_digits);
    std::uniform_int_distribution<int> digit(0, 9);
    std::uniform_int_distribution<int> expo(-exp_range, exp_range);
    std::uniform_int_distribution<int> coin(0, 1);
    int n = ndig(rng);
    std::string s;
    if (coin(rng)) s.push_back('-');
    s.push_back((char)('1' + digit(rng) % 9));
    for (int i = 1; i < n; ++i) s.push_back((char)('0' + digit(rng)));
    s += "e";
    s += std::to_string(expo(rng));
    return s;
}

} // namespace testutil
