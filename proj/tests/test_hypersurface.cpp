#include <doctest.h>

#include <cmath>
#include <numbers>

#include "crlab/error.hpp"
#include "crlab/hypersurface.hpp"
#include "oracles.hpp"

using namespace crlab;

namespace {

TruncatedSeries S(int K, std::vector<GaussianRational> c) { return {K, std::move(c)}; }

Curve one_var(int K, std::vector<GaussianRational> h, std::vector<GaussianRational> g)
{
    return Curve{{S(K, std::move(h))}, S(K, std::move(g))};
}

oracle::BiPoly bi_mul(const oracle::BiPoly &a, const oracle::BiPoly &b, int K)
{
    oracle::BiPoly c;
    for (const auto &[ka, va] : a) {
        for (const auto &[kb, vb] : b) {
            const int p = ka.first + kb.first, q = ka.second + kb.second;
            if (p + q <= K) {
                oracle::bi_add(c, p, q, va * vb);
            }
        }
    }
    return c;
}

// Expansion of rho(gamma(t)) in (t, tbar) up to total degree K, built from
// (a/2)(z^m + zbar^m) with z = h(t), zbar = conj(h)(tbar), plus Re(g).
oracle::BiPoly bivariate_expansion(const Curve &c, const SequenceFamily &f)
{
    const int K = c.K();
    oracle::BiPoly total;
    const GaussianRational half(BigRational(1, 2));
    for (int k = 1; k <= K; ++k) {
        oracle::bi_add(total, k, 0, half * c.g[k]);
        oracle::bi_add(total, 0, k, half * c.g[k].conj());
    }
    for (int j = 1; j <= c.n(); ++j) {
        oracle::BiPoly z, zb;
        for (int k = 1; k <= K; ++k) {
            const auto &h = c.h[static_cast<std::size_t>(j - 1)][k];
            if (!h.is_zero()) {
                z[{k, 0}] = h;
                zb[{0, k}] = h.conj();
            }
        }
        oracle::BiPoly zp{{{0, 0}, GaussianRational(1)}}, zbp = zp;
        for (int m = 1; m <= K; ++m) {
            zp = bi_mul(zp, z, K);
            zbp = bi_mul(zbp, zb, K);
            const GaussianRational w(BigRational(f.a_at(j, m)) / 2);
            for (const auto &[key, v] : zp) {
                oracle::bi_add(total, key.first, key.second, w * v);
            }
            for (const auto &[key, v] : zbp) {
                oracle::bi_add(total, key.first, key.second, w * v);
            }
        }
    }
    return total;
}

Curve random_curve(Rng &rng, int n, int K)
{
    Curve c;
    for (int j = 0; j < n; ++j) {
        c.h.push_back(TruncatedSeries(K, oracle::random_poly(rng, std::min(K, 4), true)));
    }
    c.g = TruncatedSeries(K, oracle::random_poly(rng, std::min(K, 4), true));
    return c;
}

} // namespace

TEST_CASE("composition examples")
{
    const auto f = gen_sequences(1, {2}, 4);
    CHECK(curve_compose(one_var(2, {0, 1}, {0, -1, -69}), f).is_zero());
    CHECK(curve_compose(one_var(2, {}, {}), f).is_zero());
    CHECK(curve_compose(one_var(2, {0, 1}, {}), f) == S(2, {0, 1, 69}));
}

TEST_CASE("tangency examples")
{
    const auto f = gen_sequences(1, {2}, 5);
    auto r = tangency_order(one_var(5, {}, {0, 0, 0, 0, 0, 1}), f);
    CHECK(r.order.to_string() == "5");
    r = tangency_order(one_var(2, {0, 1}, {0, -1, -69}), f);
    CHECK(r.order.to_string() == ">=3");
    CHECK_FALSE(r.first_nonzero_coeff.has_value());
    r = tangency_order(one_var(4, {0, 1}, {0, -1}), f);
    CHECK(r.order.to_string() == "2");
    CHECK(*r.first_nonzero_coeff == GaussianRational(69));
    CHECK(r.composed[3] == GaussianRational(70));
    CHECK_THROWS_AS(tangency_order(one_var(3, {}, {}), f), ConstantCurve);
}

TEST_CASE("curve validation")
{
    const auto f = gen_sequences(1, {2}, 3);
    CHECK_THROWS_AS(validate_curve(Curve{{S(2, {0, 1})}, S(3, {})}), TruncationMismatch);
    CHECK_THROWS_AS(validate_curve(Curve{{S(2, {1, 1})}, S(2, {})}), NonvanishingConstantTerm);
    CHECK_THROWS_AS(curve_compose(one_var(4, {0, 1}, {}), f), TruncationMismatch);
    CHECK_THROWS_AS(curve_compose(Curve{{S(2, {0, 1}), S(2, {0, 1})}, S(2, {})}, f), std::invalid_argument);
}

TEST_CASE("graphs X_m")
{
    for (int n = 1; n <= 3; ++n) {
        const auto spikes = gen_spike_schedule(n, 3, n + 2);
        const auto f = gen_sequences(n, spikes, std::max(10, spikes.back()));
        int prev = 0;
        for (int m = 0; m <= 8; ++m) {
            const auto r = xm_tangency_check(f, m);
            CHECK(r.pass);
            REQUIRE(r.slices.size() == static_cast<std::size_t>(n));
            for (const auto &s : r.slices) {
                CHECK(s.order == Valuation::at(m + 1, m + 1));
                CHECK(*s.coeff == GaussianRational(BigRational(f.a_at(s.j, m + 1))));
            }
            CHECK(m + 1 > prev);
            prev = m + 1;
        }
    }
    auto broken = gen_sequences(1, {2}, 5);
    broken.a[0][3] = 0;
    CHECK_FALSE(xm_tangency_check(broken, 3).pass);
}

TEST_CASE("pluriharmonic reduction against a bivariate expansion")
{
    const auto f = gen_sequences(2, {3, 6}, 8);
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const int K = static_cast<int>(rng.uniform(1, 6));
        const auto c = random_curve(rng, 2, K);
        const auto G = curve_compose(c, f);
        const auto bi = bivariate_expansion(c, f);
        const GaussianRational half(BigRational(1, 2));
        for (const auto &[key, v] : bi) {
            const auto [p, q] = key;
            if (p > 0 && q > 0) {
                CHECK(v.is_zero());
            } else if (q == 0 && p > 0) {
                CHECK(v == half * G[p]);
            } else if (p == 0 && q > 0) {
                CHECK(v == half * G[q].conj());
            }
        }
        for (int k = 1; k <= K; ++k) {
            const auto it = bi.find({k, 0});
            CHECK((it == bi.end() ? G[k].is_zero() : it->second == half * G[k]));
        }
    }
}

TEST_CASE("additivity in g and scaling covariance")
{
    const auto f = gen_sequences(2, {3, 6}, 8);
    Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const int K = 6;
        auto c = random_curve(rng, 2, K);
        const auto g2 = TruncatedSeries(K, oracle::random_poly(rng, 4, true));
        auto c2 = c;
        c2.g = ps_add(c.g, g2);
        CHECK(curve_compose(c2, f) == ps_add(curve_compose(c, f), g2));

        const BigRational lambda = oracle::small_rational(rng);
        auto scaled = c;
        for (auto &h : scaled.h) {
            h = ps_rescale(h, lambda);
        }
        scaled.g = ps_rescale(c.g, lambda);
        CHECK(curve_compose(scaled, f) == ps_rescale(curve_compose(c, f), lambda));
    }
}

TEST_CASE("defining function")
{
    const SurfaceModel model(gen_sequences(2, {}, 6));
    const std::vector<Complex> origin{0, 0};
    for (double t : {-3.0, 0.0, 1.5}) {
        CHECK(rho_eval(origin, {0, t}, model, 6) == 0.0);
    }
    const std::vector<Complex> z{{0.2, 0.1}, {-0.3, 0.4}};
    const double w = -(eval_f_trunc(1, z[0], model, 6) + eval_f_trunc(2, z[1], model, 6));
    CHECK(std::abs(rho_eval(z, {w, 0.7}, model, 6)) <= 1e-15);

    // a point of X_m: w = -sum_{k<=m} a^1_k z^k, other coordinates zero
    const int m = 2;
    const double e6 = static_cast<double>(model.term(1, 6).eps);
    const Complex z1 = std::polar(0.9 / (std::numbers::e * e6), 0.8);
    Complex wm = 0;
    double tail = 0;
    for (int k = 1; k <= 6; ++k) {
        const double a = model.term(1, k).a;
        if (k <= m) {
            wm -= a * std::pow(z1, k);
        } else {
            tail += a * std::pow(std::abs(z1), k);
        }
    }
    const std::vector<Complex> pt{z1, 0};
    CHECK(std::abs(rho_eval(pt, wm, model, 6)) <= tail * (1 + 1e-12));
}
