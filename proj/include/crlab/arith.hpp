#pragma once

// Exact arithmetic over Q and Q(i).
//
// BigInt and BigRational are the GMP C++ classes; mpq_class keeps every
// arithmetic result in lowest terms with a positive denominator, and
// parse_rational() canonicalizes anything that comes from text.

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace crlab {

using BigInt = mpz_class;
using BigRational = mpq_class;

// Parses "p/q" or "p" (base 10). Throws ParseError on malformed input or a
// zero denominator. The result is canonical.
BigRational parse_rational(std::string_view text, const std::string &where = "rational");
BigInt parse_integer(std::string_view text, const std::string &where = "integer");

// "p/q" with q > 0, or "p" when q == 1.
std::string to_string(const BigRational &x);
std::string to_string(const BigInt &x);

// Smallest e >= 0 with e^k >= x (x >= 0, k >= 1).
BigInt iroot_ceil(const BigInt &x, unsigned long k);

// Smallest integer >= x.
BigInt ceil(const BigRational &x);

// Natural log of a positive integer, safe for values beyond double range.
double log_of(const BigInt &x);

struct GaussianRational {
    BigRational re{0};
    BigRational im{0};

    GaussianRational() = default;
    GaussianRational(BigRational re_, BigRational im_ = 0) : re(std::move(re_)), im(std::move(im_)) {}
    GaussianRational(long v) : re(v) {}
    GaussianRational(int v) : re(v) {}

    static GaussianRational i() { return {0, 1}; }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    GaussianRational conj() const { return {re, -im}; }

    GaussianRational &operator+=(const GaussianRational &o);
    GaussianRational &operator-=(const GaussianRational &o);
    GaussianRational &operator*=(const GaussianRational &o);

    friend bool operator==(const GaussianRational &a, const GaussianRational &b)
    {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational &a, const GaussianRational &b) { return !(a == b); }
};

GaussianRational gr_add(const GaussianRational &a, const GaussianRational &b);
GaussianRational gr_mul(const GaussianRational &a, const GaussianRational &b);
BigRational gr_abs_sq(const GaussianRational &a);

inline GaussianRational operator+(GaussianRational a, const GaussianRational &b) { return a += b; }
inline GaussianRational operator-(GaussianRational a, const GaussianRational &b) { return a -= b; }
inline GaussianRational operator*(const GaussianRational &a, const GaussianRational &b) { return gr_mul(a, b); }
inline GaussianRational operator-(const GaussianRational &a) { return {-a.re, -a.im}; }

GaussianRational pow(const GaussianRational &base, unsigned long e);

// "re + im i" for diagnostics.
std::string to_string(const GaussianRational &x);

} // namespace crlab
