#include "cram/xreal.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace cram {

namespace {

constexpr uint32_t kBase = 1000000000u;

constexpr uint32_t kPow10U32[10] = {1u,       10u,       100u,      1000u,
                                    10000u,   100000u,   1000000u,  10000000u,
                                    100000000u, 1000000000u};

int digits_in_u32(uint32_t v) {
    int d = 1;
    while (v >= 10u) { v /= 10u; ++d; }
    return d;
}

int limbs_declen(const uint32_t* p, int n) {
    if (n == 0) return 0;
    return (n - 1) * 9 + digits_in_u32(p[n - 1]);
}

int limbs_cmp(const uint32_t* a, int na, const uint32_t* b, int nb) {
    if (na != nb) return na < nb ? -1 : 1;
    for (int i = na - 1; i >= 0; --i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

// out = a + b; out may alias a. Returns new length.
int limbs_add(const uint32_t* a, int na, const uint32_t* b, int nb, uint32_t* out,
              int cap) {
    int n = std::max(na, nb);
    uint32_t carry = 0;
    for (int i = 0; i < n; ++i) {
        uint32_t s = carry;
        if (i < na) s += a[i];
        if (i < nb) s += b[i];
        if (s >= kBase) { s -= kBase; carry = 1; } else carry = 0;
        out[i] = s;
    }
    if (carry) {
        if (n >= cap) throw Error("XReal: limb capacity exceeded in add");
        out[n++] = carry;
    }
    return n;
}

// out = a - b with |a| >= |b|; out may alias a. Returns new length.
int limbs_sub(const uint32_t* a, int na, const uint32_t* b, int nb, uint32_t* out) {
    int64_t borrow = 0;
    for (int i = 0; i < na; ++i) {
        int64_t s = (int64_t)a[i] - borrow - (i < nb ? (int64_t)b[i] : 0);
        if (s < 0) { s += kBase; borrow = 1; } else borrow = 0;
        out[i] = (uint32_t)s;
    }
    int n = na;
    while (n > 0 && out[n - 1] == 0) --n;
    return n;
}

int limbs_mul(const uint32_t* a, int na, const uint32_t* b, int nb, uint32_t* out,
              int cap) {
    int n = na + nb;
    if (n > cap) throw Error("XReal: limb capacity exceeded in mul");
    unsigned __int128 acc = 0;
    for (int k = 0; k < n - 1; ++k) {
        int lo = k - nb + 1; if (lo < 0) lo = 0;
        int hi = k < na - 1 ? k : na - 1;
        for (int i = lo; i <= hi; ++i)
            acc += (uint64_t)a[i] * b[k - i];
        out[k] = (uint32_t)(acc % kBase);
        acc /= kBase;
    }
    out[n - 1] = (uint32_t)acc;
    while (n > 0 && out[n - 1] == 0) --n;
    return n;
}

// p *= 10^dec (dec >= 0). Returns new length.
int limbs_shift_up(uint32_t* p, int n, int dec, int cap) {
    if (n == 0 || dec == 0) return n;
    int q = dec / 9, r = dec % 9;
    if (n + q + 1 > cap) throw Error("XReal: limb capacity exceeded in shift");
    if (q) {
        std::memmove(p + q, p, (size_t)n * sizeof(uint32_t));
        std::memset(p, 0, (size_t)q * sizeof(uint32_t));
        n += q;
    }
    if (r) {
        uint64_t mul = kPow10U32[r], carry = 0;
        for (int i = q; i < n; ++i) {
            uint64_t v = (uint64_t)p[i] * mul + carry;
            p[i] = (uint32_t)(v % kBase);
            carry = v / kBase;
        }
        if (carry) p[n++] = (uint32_t)carry;
    }
    return n;
}

// p /= d (0 < d < 1e9); returns remainder, updates length.
uint32_t limbs_div_small(uint32_t* p, int& n, uint32_t d) {
    uint64_t rem = 0;
    for (int i = n - 1; i >= 0; --i) {
        uint64_t cur = rem * kBase + p[i];
        p[i] = (uint32_t)(cur / d);
        rem = cur % d;
    }
    while (n > 0 && p[n - 1] == 0) --n;
    return (uint32_t)rem;
}

} // namespace

// ---------------------------------------------------------------------------
// construction / normalization
// ---------------------------------------------------------------------------

XReal::XReal(long long v, int digits) {
    if (digits < 1 || digits > kHardCapDigits)
        throw DomainError("XReal: digit budget out of range");
    digits_ = (int16_t)digits;
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    unsigned long long u = v < 0 ? -(unsigned long long)v : (unsigned long long)v;
    while (u) {
        limb_[nlimbs_++] = (uint32_t)(u % kBase);
        u /= kBase;
    }
    normalize();
    round_to(digits_);
}

void XReal::normalize() {
    while (nlimbs_ > 0 && limb_[nlimbs_ - 1] == 0) --nlimbs_;
    if (nlimbs_ == 0) { sign_ = 0; exp10_ = 0; return; }
    int drop = 0;
    while (drop < nlimbs_ && limb_[drop] == 0) ++drop;
    if (drop) {
        std::memmove(limb_, limb_ + drop, (size_t)(nlimbs_ - drop) * sizeof(uint32_t));
        nlimbs_ -= drop;
        exp10_ += (int64_t)drop * 9;
    }
}

int XReal::dec_len() const { return limbs_declen(limb_, nlimbs_); }

void XReal::shift_up(int dec) {
    nlimbs_ = limbs_shift_up(limb_, nlimbs_, dec, kMaxLimbs);
    exp10_ -= dec;
}

void XReal::round_to(int d) {
    if (sign_ == 0) return;
    if (d < 1) d = 1;
    int len = dec_len();
    if (len <= d) { normalize(); return; }
    int drop = len - d;
    int q = drop / 9, r = drop % 9;
    uint32_t first_dropped;
    if (r == 0) {
        first_dropped = limb_[q - 1] / kPow10U32[8];
        std::memmove(limb_, limb_ + q, (size_t)(nlimbs_ - q) * sizeof(uint32_t));
        nlimbs_ -= q;
    } else {
        if (q) {
            std::memmove(limb_, limb_ + q, (size_t)(nlimbs_ - q) * sizeof(uint32_t));
            nlimbs_ -= q;
        }
        uint32_t rem = limbs_div_small(limb_, nlimbs_, kPow10U32[r]);
        first_dropped = rem / kPow10U32[r - 1];
    }
    exp10_ += drop;
    if (first_dropped >= 5) {
        uint32_t one = 1;
        nlimbs_ = limbs_add(limb_, nlimbs_, &one, 1, limb_, kMaxLimbs);
        if (limbs_declen(limb_, nlimbs_) > d) {
            int n = nlimbs_;
            limbs_div_small(limb_, n, 10u);   // exact: value is 10^d
            nlimbs_ = n;
            exp10_ += 1;
        }
    }
    normalize();
}

XReal XReal::from_parts(int sgn, const uint32_t* limbs, int n, long long exp10,
                        int digits) {
    if (n > kMaxLimbs) throw Error("XReal: limb capacity exceeded");
    XReal r;
    r.sign_ = (int8_t)sgn;
    r.digits_ = (int16_t)digits;
    r.nlimbs_ = n;
    r.exp10_ = exp10;
    std::memcpy(r.limb_, limbs, (size_t)n * sizeof(uint32_t));
    r.normalize();
    r.round_to(digits);
    return r;
}

XReal XReal::with_digits(int digits) const {
    if (digits < 1 || digits > kHardCapDigits)
        throw DomainError("XReal: digit budget out of range");
    XReal r = *this;
    r.digits_ = (int16_t)digits;
    r.round_to(digits);
    return r;
}

XReal XReal::neg() const {
    XReal r = *this;
    r.sign_ = (int8_t)-r.sign_;
    return r;
}

XReal XReal::abs() const {
    XReal r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

long long XReal::mag10() const {
    if (sign_ == 0) throw DomainError("XReal: mag10 of zero");
    return (long long)(nlimbs_ - 1) * 9 + digits_in_u32(limb_[nlimbs_ - 1]) - 1 + exp10_;
}

XReal XReal::round_sig(int d) const {
    if (d < 1) throw DomainError("XReal: round_sig needs d >= 1");
    XReal r = *this;
    r.round_to(d);
    return r;
}

XReal XReal::scaled_pow10(long long e) const {
    XReal r = *this;
    if (r.sign_ != 0) r.exp10_ += e;
    return r;
}

XReal XReal::pow10(long long e, int digits) {
    XReal r(1, digits);
    r.exp10_ = e;
    return r;
}

// ---------------------------------------------------------------------------
// parsing / formatting
// ---------------------------------------------------------------------------

XReal XReal::parse(std::string_view text, int digits) {
    if (digits < kMinDigits || digits > kMaxDigits)
        throw DomainError("XReal: precision must be in [30, 256] decimal digits");
    size_t i = 0;
    const size_t n = text.size();
    auto fail = [&](const char* why) {
        throw ParseError(std::string("XReal: cannot parse \"") + std::string(text) +
                         "\": " + why);
    };
    if (n == 0) fail("empty string");
    int sgn = 1;
    if (text[i] == '+' || text[i] == '-') {
        if (text[i] == '-') sgn = -1;
        ++i;
    }
    std::string digs;
    digs.reserve(n);
    long long frac_len = 0;
    bool seen_dot = false, seen_digit = false;
    for (; i < n; ++i) {
        char c = text[i];
        if (c >= '0' && c <= '9') {
            seen_digit = true;
            digs.push_back(c);
            if (seen_dot) ++frac_len;
        } else if (c == '.') {
            if (seen_dot) fail("second decimal point");
            seen_dot = true;
        } else if (c == 'e' || c == 'E') {
            break;
        } else {
            fail("unexpected character");
        }
    }
    if (!seen_digit) fail("no digits");
    long long expo = 0;
    if (i < n) {                    // exponent part
        ++i;
        if (i >= n) fail("empty exponent");
        int esgn = 1;
        if (text[i] == '+' || text[i] == '-') {
            if (text[i] == '-') esgn = -1;
            ++i;
        }
        if (i >= n) fail("empty exponent");
        for (; i < n; ++i) {
            char c = text[i];
            if (c < '0' || c > '9') fail("bad exponent");
            expo = expo * 10 + (c - '0');
            if (expo > 1000000000000000LL) fail("exponent out of range");
        }
        expo *= esgn;
    }
    // strip leading zeros
    size_t lead = 0;
    while (lead + 1 < digs.size() && digs[lead] == '0') ++lead;
    if (lead) digs.erase(0, lead);
    if (digs == "0") {
        XReal z;
        z.digits_ = (int16_t)digits;
        return z;
    }
    // keep at most kHardCapDigits digits, rounding on the first dropped one
    bool bump = false;
    if ((int)digs.size() > kHardCapDigits) {
        bump = digs[kHardCapDigits] >= '5';
        expo += (long long)(digs.size() - kHardCapDigits);
        digs.resize(kHardCapDigits);
    }
    XReal r;
    r.sign_ = (int8_t)sgn;
    r.digits_ = (int16_t)digits;
    r.exp10_ = expo - frac_len;
    // build limbs from the digit string, 9 chars at a time from the right
    int pos = (int)digs.size();
    while (pos > 0) {
        int start = pos - 9; if (start < 0) start = 0;
        uint32_t v = 0;
        for (int j = start; j < pos; ++j) v = v * 10 + (uint32_t)(digs[j] - '0');
        r.limb_[r.nlimbs_++] = v;
        pos = start;
    }
    if (bump) {
        uint32_t one = 1;
        r.nlimbs_ = limbs_add(r.limb_, r.nlimbs_, &one, 1, r.limb_, kMaxLimbs);
    }
    r.normalize();
    r.round_to(digits);
    return r;
}

std::string XReal::str(int d) const {
    if (d < 1) throw DomainError("XReal: str needs at least one digit");
    if (sign_ == 0) return "0";
    XReal r = *this;
    r.round_to(d);
    char buf[16];
    std::string digs;
    digs.reserve((size_t)r.nlimbs_ * 9);
    std::snprintf(buf, sizeof buf, "%u", r.limb_[r.nlimbs_ - 1]);
    digs += buf;
    for (int i = r.nlimbs_ - 2; i >= 0; --i) {
        std::snprintf(buf, sizeof buf, "%09u", r.limb_[i]);
        digs += buf;
    }
    long long mag = r.mag10();
    if ((int)digs.size() < d) digs.append((size_t)(d - (int)digs.size()), '0');
    std::string out;
    if (sign_ < 0) out.push_back('-');
    out.push_back(digs[0]);
    if (d > 1) {
        out.push_back('.');
        out.append(digs, 1, (size_t)(d - 1));
    }
    out.push_back('e');
    out += std::to_string(mag);
    return out;
}

std::string XReal::str() const {
    if (sign_ == 0) return "0";
    int len = dec_len();
    // trim trailing decimal zeros
    XReal r = *this;
    while (len > 1) {
        XReal t = r;
        int n = t.nlimbs_;
        uint32_t rem = limbs_div_small(t.limb_, n, 10u);
        if (rem != 0) break;
        t.nlimbs_ = n;
        t.exp10_ += 1;
        r = t;
        --len;
    }
    return r.str(len);
}

double XReal::to_double() const {
    if (sign_ == 0) return 0.0;
    uint64_t top = 0;
    int got = 0;
    for (int i = nlimbs_ - 1; i >= 0 && got < 2; --i, ++got)
        top = top * kBase + limb_[i];
    int top_len = digits_in_u32(limb_[nlimbs_ - 1]) + (got > 1 ? 9 : 0);
    long long mag = mag10();
    double m = (double)top / std::pow(10.0, top_len - 1);   // in [1, 10)
    if (mag > 300) return sign_ * m * 1e300;
    if (mag < -300) return sign_ * m * 1e-300;
    return sign_ * m * std::pow(10.0, (double)mag);
}

XReal XReal::from_double(double v, int digits) {
    if (v == 0.0) return XReal(0, digits);
    if (!std::isfinite(v)) throw DomainError("XReal: from_double of non-finite value");
    int e = (int)std::floor(std::log10(std::fabs(v)));
    double m = v / std::pow(10.0, e);
    if (std::fabs(m) >= 10.0) { m /= 10.0; ++e; }
    if (std::fabs(m) < 1.0) { m *= 10.0; --e; }
    return from_double_mantissa(m, e, digits);
}

XReal XReal::from_double_mantissa(double m, long long extra_exp10, int digits) {
    // m in (-10, 10); value = round(m * 1e17) * 10^(extra-17)
    long long v = std::llround(m * 1e17);
    XReal r(v, digits);
    if (r.sign_ != 0) r.exp10_ += extra_exp10 - 17;
    return r;
}

// ---------------------------------------------------------------------------
// comparison
// ---------------------------------------------------------------------------

int XReal::cmp_aligned_mag(const XReal& a, const XReal& b) {
    // |a| vs |b| for nonzero operands
    long long ma = a.mag10(), mb = b.mag10();
    if (ma != mb) return ma < mb ? -1 : 1;
    uint32_t ta[kMaxLimbs], tb[kMaxLimbs];
    std::memcpy(ta, a.limb_, (size_t)a.nlimbs_ * sizeof(uint32_t));
    std::memcpy(tb, b.limb_, (size_t)b.nlimbs_ * sizeof(uint32_t));
    int na = a.nlimbs_, nb = b.nlimbs_;
    long long gap = a.exp10_ - b.exp10_;
    if (gap > 0) na = limbs_shift_up(ta, na, (int)gap, kMaxLimbs);
    else if (gap < 0) nb = limbs_shift_up(tb, nb, (int)-gap, kMaxLimbs);
    return limbs_cmp(ta, na, tb, nb);
}

int XReal::cmp(const XReal& a, const XReal& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
    if (a.sign_ == 0) return 0;
    return a.sign_ * cmp_aligned_mag(a, b);
}

// ---------------------------------------------------------------------------
// arithmetic
// ---------------------------------------------------------------------------

XReal XReal::add_signed(const XReal& a, const XReal& b, bool negate_b) {
    int dr = std::max(a.digits_, b.digits_);
    int bsign = negate_b ? -b.sign_ : b.sign_;
    if (b.sign_ == 0) return a.with_digits(dr);
    if (a.sign_ == 0) {
        XReal r = b.with_digits(dr);
        r.sign_ = (int8_t)bsign;
        return r;
    }
    long long ma = a.mag10(), mb = b.mag10();
    // far-apart operands: the small one is below the rounding horizon
    if (ma - mb >= dr + 25) return a.with_digits(dr);
    if (mb - ma >= dr + 25) {
        XReal r = b.with_digits(dr);
        r.sign_ = (int8_t)bsign;
        return r;
    }
    uint32_t ta[kMaxLimbs], tb[kMaxLimbs];
    std::memcpy(ta, a.limb_, (size_t)a.nlimbs_ * sizeof(uint32_t));
    std::memcpy(tb, b.limb_, (size_t)b.nlimbs_ * sizeof(uint32_t));
    int na = a.nlimbs_, nb = b.nlimbs_;
    long long gap = a.exp10_ - b.exp10_;
    long long expo = std::min(a.exp10_, b.exp10_);
    if (gap > 0) na = limbs_shift_up(ta, na, (int)gap, kMaxLimbs);
    else if (gap < 0) nb = limbs_shift_up(tb, nb, (int)-gap, kMaxLimbs);
    XReal r;
    r.digits_ = (int16_t)dr;
    r.exp10_ = expo;
    if (a.sign_ == bsign) {
        r.nlimbs_ = limbs_add(ta, na, tb, nb, r.limb_, kMaxLimbs);
        r.sign_ = (int8_t)a.sign_;
    } else {
        int c = limbs_cmp(ta, na, tb, nb);
        if (c == 0) {
            XReal z;
            z.digits_ = (int16_t)dr;
            return z;
        }
        if (c > 0) {
            r.nlimbs_ = limbs_sub(ta, na, tb, nb, r.limb_);
            r.sign_ = (int8_t)a.sign_;
        } else {
            r.nlimbs_ = limbs_sub(tb, nb, ta, na, r.limb_);
            r.sign_ = (int8_t)bsign;
        }
    }
    r.normalize();
    r.round_to(dr);
    return r;
}

XReal operator+(const XReal& a, const XReal& b) { return XReal::add_signed(a, b, false); }
XReal operator-(const XReal& a, const XReal& b) { return XReal::add_signed(a, b, true); }

XReal operator*(const XReal& a, const XReal& b) {
    int dr = std::max(a.digits_, b.digits_);
    if (a.sign_ == 0 || b.sign_ == 0) {
        XReal z;
        z.digits_ = (int16_t)dr;
        return z;
    }
    XReal r;
    r.digits_ = (int16_t)dr;
    r.sign_ = (int8_t)(a.sign_ * b.sign_);
    r.exp10_ = a.exp10_ + b.exp10_;
    r.nlimbs_ = limbs_mul(a.limb_, a.nlimbs_, b.limb_, b.nlimbs_, r.limb_,
                          XReal::kMaxLimbs);
    r.normalize();
    r.round_to(dr);
    return r;
}

XReal XReal::div_small(uint32_t d) const {
    if (d == 0) throw DomainError("XReal: division by zero");
    if (d >= kBase) throw DomainError("XReal: div_small divisor too large");
    if (sign_ == 0) return *this;
    XReal r = *this;
    // give the quotient enough headroom for the budget plus a guard
    int want = digits_ + 4 + digits_in_u32(d);
    int have = r.dec_len();
    if (have < want) r.shift_up(want - have);
    int n = r.nlimbs_;
    uint32_t rem = limbs_div_small(r.limb_, n, d);
    r.nlimbs_ = n;
    if (2ull * rem >= d) {
        uint32_t one = 1;
        r.nlimbs_ = limbs_add(r.limb_, r.nlimbs_, &one, 1, r.limb_, kMaxLimbs);
    }
    r.normalize();
    r.round_to(digits_);
    return r;
}

XReal XReal::recip(const XReal& b, int digits) {
    if (b.sign_ == 0) throw DomainError("XReal: division by zero");
    // exact shortcut for powers of ten (normalize leaves no low zero limbs,
    // so a power of ten is a single limb that is itself a power of ten)
    if (b.nlimbs_ == 1) {
        uint32_t v = b.limb_[0];
        int d = digits_in_u32(v);
        if (v == kPow10U32[d - 1]) {
            XReal r(b.sign_, digits);
            r.exp10_ = -(b.exp10_ + (d - 1));
            return r;
        }
    }
    int work = std::min(digits + 6, (int)kHardCapDigits);
    // seed from the leading 18 digits
    int lb = b.dec_len();
    int t = std::min(lb, 18);
    uint32_t tmp[kMaxLimbs];
    std::memcpy(tmp, b.limb_, (size_t)b.nlimbs_ * sizeof(uint32_t));
    int n = b.nlimbs_;
    int dropd = lb - t;
    if (dropd) {
        int q = dropd / 9, r2 = dropd % 9;
        if (q) { std::memmove(tmp, tmp + q, (size_t)(n - q) * sizeof(uint32_t)); n -= q; }
        if (r2) limbs_div_small(tmp, n, kPow10U32[r2]);
    }
    uint64_t s_top = 0;
    for (int i = n - 1; i >= 0; --i) s_top = s_top * kBase + tmp[i];
    // b = s_top * 10^(exp10+dropd); seed 1/b = (10^t/s_top) * 10^(-t-exp10-dropd)
    double u = std::pow(10.0, t) / (double)s_top;   // in [1, 10)
    XReal y = from_double_mantissa(u, -(long long)t - (b.exp10_ + dropd), 19);
    y.sign_ = (int8_t)(y.sign_ * b.sign_);
    XReal bw = b.with_digits(std::min(work + 2, (int)kHardCapDigits));
    int ds = 17;
    for (;;) {
        bool last = ds >= work;
        int next = last ? ds : std::min(work, 2 * ds - 4);
        XReal bi = bw.round_sig(std::min(next + 2, (int)kHardCapDigits)).with_digits(std::min(next + 2, (int)kHardCapDigits));
        XReal e = XReal(1, next + 2) - bi * y.with_digits(next + 2);
        y = (y.with_digits(next + 2) + y.with_digits(next + 2) * e).with_digits(next + 2);
        if (last) break;
        ds = next;
    }
    return y.with_digits(work);
}

XReal operator/(const XReal& a, const XReal& b) {
    int dr = std::max(a.digits(), b.digits());
    if (b.is_zero()) throw DomainError("XReal: division by zero");
    if (a.is_zero()) {
        XReal z;
        return z.with_digits(dr);
    }
    XReal y = XReal::recip(b, dr + 8);
    return (a * y).with_digits(dr);
}

XReal XReal::sqrt() const {
    if (sign_ < 0) throw DomainError("XReal: sqrt of negative value");
    if (sign_ == 0) return *this;
    int work = std::min((int)digits_ + 10, (int)kHardCapDigits);
    long long m = mag10();
    long long h = m >= 0 ? m / 2 : (m - 1) / 2;
    double v = scaled_pow10(-2 * h).to_double();       // in [1, 100)
    XReal y = from_double_mantissa(1.0 / std::sqrt(v), -h, 19);
    XReal xw = with_digits(std::min(work + 2, (int)kHardCapDigits));
    int ds = 17;
    for (;;) {
        bool last = ds >= work;
        int next = last ? ds : std::min(work, 2 * ds - 4);
        int bud = std::min(next + 2, (int)kHardCapDigits);
        XReal yb = y.with_digits(bud);
        XReal e = XReal(1, bud) - xw.round_sig(bud).with_digits(bud) * yb * yb;
        y = yb + (yb * e).div_small(2);
        if (last) break;
        ds = next;
    }
    return (xw * y).with_digits(digits_);
}

XReal XReal::two_pow(long long m, int digits) {
    if (m < 0) {
        XReal p = two_pow(-m, digits + 6);
        return recip(p, digits + 4).with_digits(digits);
    }
    int work = std::min(digits + 6, (int)kHardCapDigits);
    XReal acc(1, work), base(2, work);
    unsigned long long e = (unsigned long long)m;
    while (e) {
        if (e & 1ull) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc.with_digits(digits);
}

// ---------------------------------------------------------------------------
// constants
// ---------------------------------------------------------------------------

namespace {
constexpr int kConstDigits = 292;

// ln2 = sum_{n>=1} 1/(n 2^n); every term is a short division, so the whole
// constant is produced by exact integer arithmetic.
XReal compute_ln2() {
    XReal t(1, kConstDigits + 6);
    XReal acc(0, kConstDigits + 6);
    for (uint32_t n = 1;; ++n) {
        t = t.div_small(2);
        acc = acc + t.div_small(n);
        if (t.is_zero() || t.mag10() < -(kConstDigits + 4)) break;
    }
    return acc;
}

// ln(5/4) = sum_{n>=1} 1/(n 5^n)
XReal compute_ln5over4() {
    XReal t(1, kConstDigits + 6);
    XReal acc(0, kConstDigits + 6);
    for (uint32_t n = 1;; ++n) {
        t = t.div_small(5);
        acc = acc + t.div_small(n);
        if (t.is_zero() || t.mag10() < -(kConstDigits + 4)) break;
    }
    return acc;
}
} // namespace

XReal XReal::ln2(int digits) {
    static const XReal master = compute_ln2();
    if (digits > kConstDigits) digits = kConstDigits;
    return master.with_digits(digits);
}

XReal XReal::ln10(int digits) {
    static const XReal master = [] {
        XReal three(3, kConstDigits + 6);
        return three * compute_ln2() + compute_ln5over4();
    }();
    if (digits > kConstDigits) digits = kConstDigits;
    return master.with_digits(digits);
}

// ---------------------------------------------------------------------------
// exp / ln
// ---------------------------------------------------------------------------

namespace {
// nearest integer for |x| known to be modest (used for the ln2 multiple)
long long to_ll_nearest(const XReal& x) {
    if (x.is_zero()) return 0;
    long long m = x.mag10();
    if (m > 17) throw DomainError("XReal: integer conversion out of range");
    XReal half = XReal(5).scaled_pow10(-1);
    if (x.abs() < half) return 0;
    if (m < 0) return x.sign() > 0 ? 1 : -1;   // |x| in [0.5, 1)
    XReal r = x.round_sig((int)m + 1);      // rounds at the decimal point
    // r is now an integer: significand * 10^exp with exp >= 0
    std::string s = r.str();                // canonical "D.DD...e<k>"
    // parse it back as integer
    size_t epos = s.find('e');
    std::string mant = s.substr(0, epos);
    long long expo = std::stoll(s.substr(epos + 1));
    bool negv = false;
    if (!mant.empty() && mant[0] == '-') { negv = true; mant.erase(0, 1); }
    size_t dot = mant.find('.');
    if (dot != std::string::npos) mant.erase(dot, 1);
    long long v = 0;
    for (char c : mant) v = v * 10 + (c - '0');
    long long scale = expo - (long long)(mant.size() - 1);
    for (long long i = 0; i < scale; ++i) v *= 10;
    return negv ? -v : v;
}
} // namespace

XReal exp(const XReal& x, int digits) {
    if (digits < XReal::kMinDigits) digits = XReal::kMinDigits;
    if (digits > XReal::kMaxDigits)
        throw DomainError("XReal: exp precision above the 256-digit cap");
    if (x.is_zero()) return XReal(1, digits);
    if (x.mag10() > 6 || (x.mag10() == 6 && x.abs() > XReal::pow10(6, 30)))
        throw DomainError("XReal: exp argument outside |x| <= 1e6");
    int work = digits + 12;
    XReal q = x.with_digits(34) / XReal::ln2(34);
    long long m = to_ll_nearest(q);
    XReal s = x.with_digits(work) - XReal(m, work) * XReal::ln2(work + 6);
    // Taylor sum on |s| <= ln2/2
    XReal sum(1, work), term(1, work);
    for (uint32_t n = 1;; ++n) {
        term = (term * s).div_small(n);
        if (term.is_zero()) break;
        sum = sum + term;
        if (term.mag10() < -(digits + 6)) break;
        if (n > 500) throw ConvergenceError("XReal: exp series failed to converge");
    }
    XReal p = XReal::two_pow(m, work);
    return (sum * p).with_digits(digits);
}

XReal ln(const XReal& a, int digits) {
    if (a.sign() <= 0) throw DomainError("XReal: ln needs a positive argument");
    if (digits < XReal::kMinDigits) digits = XReal::kMinDigits;
    int work = digits + 8;
    long long m = a.mag10();
    double v = a.scaled_pow10(-m).to_double();          // in [1, 10)
    XReal y = XReal::from_double_mantissa(std::log(v), 0, 19) +
              XReal(m, 34) * XReal::ln10(34);
    int ds = 15;
    for (;;) {
        bool last = ds >= work;
        int next = last ? ds : std::min(work, 2 * ds - 4);
        int bud = std::max(next + 2, (int)XReal::kMinDigits);
        XReal r = a.with_digits(std::min(bud, (int)XReal::kMaxDigits)) *
                  exp(y.with_digits(bud).neg(), std::min(bud, (int)XReal::kMaxDigits));
        y = y.with_digits(bud) + (r - XReal(1, bud));
        if (last) break;
        ds = next;
    }
    return y.with_digits(digits);
}

} // namespace cram
