#include "crlab/arith.hpp"

#include <cmath>
#include <string>

#include "crlab/error.hpp"

namespace crlab {

namespace {

bool is_decimal_integer(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (c < '0' || c > '9') {
            return false;
        }
    }
    return true;
}

} // namespace

BigInt parse_integer(std::string_view text, const std::string &where)
{
    if (!is_decimal_integer(text)) {
        throw ParseError(where, "expected a base-10 integer, got '" + std::string(text) + "'");
    }
    if (text.front() == '+') {
        text.remove_prefix(1);
    }
    return BigInt(std::string(text), 10);
}

BigRational parse_rational(std::string_view text, const std::string &where)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return BigRational(parse_integer(text, where));
    }
    const BigInt num = parse_integer(text.substr(0, slash), where);
    const BigInt den = parse_integer(text.substr(slash + 1), where);
    if (den == 0) {
        throw ParseError(where, "zero denominator");
    }
    BigRational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const BigInt &x) { return x.get_str(10); }

std::string to_string(const BigRational &x)
{
    if (x.get_den() == 1) {
        return x.get_num().get_str(10);
    }
    return x.get_num().get_str(10) + "/" + x.get_den().get_str(10);
}

BigInt iroot_ceil(const BigInt &x, unsigned long k)
{
    if (sgn(x) <= 0) {
        return 0;
    }
    BigInt r;
    // mpz_root truncates toward zero; bump when not exact.
    const int exact = mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);
    if (!exact) {
        r += 1;
    }
    return r;
}

BigInt ceil(const BigRational &x)
{
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

double log_of(const BigInt &x)
{
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, x.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

GaussianRational &GaussianRational::operator+=(const GaussianRational &o)
{
    re += o.re;
    im += o.im;
    return *this;
}

GaussianRational &GaussianRational::operator-=(const GaussianRational &o)
{
    re -= o.re;
    im -= o.im;
    return *this;
}

GaussianRational &GaussianRational::operator*=(const GaussianRational &o)
{
    *this = gr_mul(*this, o);
    return *this;
}

GaussianRational gr_add(const GaussianRational &a, const GaussianRational &b)
{
    return {a.re + b.re, a.im + b.im};
}

GaussianRational gr_mul(const GaussianRational &a, const GaussianRational &b)
{
    if (sgn(a.im) == 0 && sgn(b.im) == 0) {
        return {a.re * b.re, 0};
    }
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

BigRational gr_abs_sq(const GaussianRational &a) { return a.re * a.re + a.im * a.im; }

GaussianRational pow(const GaussianRational &base, unsigned long e)
{
    GaussianRational result(1);
    GaussianRational b = base;
    while (e > 0) {
        if (e & 1UL) {
            result = gr_mul(result, b);
        }
        e >>= 1;
        if (e > 0) {
            b = gr_mul(b, b);
        }
    }
    return result;
}

std::string to_string(const GaussianRational &x)
{
    return to_string(x.re) + " + " + to_string(x.im) + "i";
}

} // namespace crlab
