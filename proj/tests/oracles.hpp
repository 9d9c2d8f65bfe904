#pragma once

// Independent reference computations for the tests. Nothing here calls the
// series or hypersurface code paths it is used to check.

#include <complex>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "crlab/arith.hpp"
#include "crlab/random.hpp"

namespace oracle {

using crlab::BigRational;
using crlab::GaussianRational;
using Poly = std::vector<GaussianRational>;  // index = degree, no truncation

inline Poly mul(const Poly &a, const Poly &b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    Poly c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            GaussianRational p{a[i].re * b[j].re - a[i].im * b[j].im, a[i].re * b[j].im + a[i].im * b[j].re};
            c[i + j].re += p.re;
            c[i + j].im += p.im;
        }
    }
    return c;
}

inline Poly power(const Poly &h, unsigned m)
{
    Poly r{GaussianRational(1)};
    for (unsigned i = 0; i < m; ++i) {
        r = mul(r, h);
    }
    return r;
}

inline GaussianRational coeff(const Poly &p, std::size_t k) { return k < p.size() ? p[k] : GaussianRational(0); }

// Visits every ordered composition n_1 + ... + n_m = k with n_i >= 1.
inline void for_each_composition(int k, int m, const std::function<void(const std::vector<int> &)> &fn)
{
    std::vector<int> parts;
    std::function<void(int, int)> rec = [&](int remaining, int slots) {
        if (slots == 0) {
            if (remaining == 0) {
                fn(parts);
            }
            return;
        }
        for (int p = 1; p <= remaining - (slots - 1); ++p) {
            parts.push_back(p);
            rec(remaining - p, slots - 1);
            parts.pop_back();
        }
    };
    rec(k, m);
}

// sum_{m<=k} a_m sum_{n_1+..+n_m=k} alpha_{n_1} .. alpha_{n_m}, enumerated
// term by term.
inline GaussianRational composition_coefficient(const std::vector<BigRational> &a, const Poly &h, int k)
{
    GaussianRational total;
    for (int m = 1; m <= k; ++m) {
        GaussianRational inner;
        for_each_composition(k, m, [&](const std::vector<int> &parts) {
            GaussianRational prod(1);
            for (int p : parts) {
                const auto c = coeff(h, static_cast<std::size_t>(p));
                prod = GaussianRational{prod.re * c.re - prod.im * c.im, prod.re * c.im + prod.im * c.re};
            }
            inner.re += prod.re;
            inner.im += prod.im;
        });
        total.re += a[static_cast<std::size_t>(m - 1)] * inner.re;
        total.im += a[static_cast<std::size_t>(m - 1)] * inner.im;
    }
    return total;
}

inline long count_compositions(int k, int m)
{
    long n = 0;
    for_each_composition(k, m, [&](const std::vector<int> &) { ++n; });
    return n;
}

inline BigRational small_rational(crlab::Rng &rng, long bound = 8)
{
    const long q = rng.uniform(1, bound);
    const long p = rng.uniform(-bound, bound);
    BigRational r(p, q);
    r.canonicalize();
    return r;
}

inline GaussianRational small_gaussian(crlab::Rng &rng, long bound = 8)
{
    return {small_rational(rng, bound), small_rational(rng, bound)};
}

inline Poly random_poly(crlab::Rng &rng, int degree, bool zero_constant)
{
    Poly p(static_cast<std::size_t>(degree) + 1);
    for (int k = zero_constant ? 1 : 0; k <= degree; ++k) {
        if (rng.uniform(0, 4) != 0) {
            p[static_cast<std::size_t>(k)] = small_gaussian(rng);
        }
    }
    return p;
}

// Five-point finite-difference Laplacian of a real function of z.
inline double fd_laplacian(const std::function<double(std::complex<double>)> &f, std::complex<double> z, double h)
{
    const std::complex<double> dx(h, 0), dy(0, h);
    return (f(z + dx) + f(z - dx) + f(z + dy) + f(z - dy) - 4 * f(z)) / (h * h);
}

// Bivariate (t, tbar) expansion: key (p, q) for t^p tbar^q.
using BiPoly = std::map<std::pair<int, int>, GaussianRational>;

inline void bi_add(BiPoly &acc, int p, int q, const GaussianRational &c)
{
    auto &slot = acc[{p, q}];
    slot.re += c.re;
    slot.im += c.im;
}

} // namespace oracle
