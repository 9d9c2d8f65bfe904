#include <doctest.h>

#include "crlab/error.hpp"
#include "crlab/series.hpp"
#include "oracles.hpp"

using namespace crlab;

namespace {

TruncatedSeries S(int K, std::initializer_list<long> c)
{
    std::vector<GaussianRational> v;
    for (long x : c) {
        v.emplace_back(x);
    }
    return {K, v};
}

std::vector<BigRational> R(std::initializer_list<long> c)
{
    std::vector<BigRational> v;
    for (long x : c) {
        v.emplace_back(x);
    }
    return v;
}

TruncatedSeries from_poly(int K, const oracle::Poly &p)
{
    std::vector<GaussianRational> v(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) {
        v[static_cast<std::size_t>(k)] = oracle::coeff(p, static_cast<std::size_t>(k));
    }
    return {K, v};
}

} // namespace

TEST_CASE("multiplication examples")
{
    CHECK(ps_mul(S(2, {1, 1}), S(2, {1, -1})) == S(2, {1, 0, -1}));
    CHECK(ps_mul(S(3, {2, 5, 1}), TruncatedSeries(3)).is_zero());
    const oracle::Poly tt{0, 1, 1};
    CHECK(ps_mul(S(4, {0, 1, 1}), S(4, {0, 1, 1})) == from_poly(4, oracle::mul(tt, tt)));
    CHECK(from_poly(4, oracle::mul(tt, tt)) == S(4, {0, 0, 1, 2, 1}));
}

TEST_CASE("power examples")
{
    CHECK(ps_pow(S(5, {0, 1}), 3) == TruncatedSeries::monomial(5, 3));
    const auto h = S(4, {0, 2, -1, 3});
    CHECK(ps_pow(h, 1) == h);
    CHECK(ps_pow(S(4, {0, 1, 1}), 2) == from_poly(4, oracle::power({0, 1, 1}, 2)));
}

TEST_CASE("outer composition examples")
{
    const auto a12 = R({1, 2});
    CHECK(ps_compose_outer(a12, S(2, {0, 1, 1})) == S(2, {0, 1, 3}));
    CHECK(ps_compose_outer(a12, TruncatedSeries(2)).is_zero());
    CHECK(ps_compose_outer(R({1, 69}), S(2, {0, 1})) == S(2, {0, 1, 69}));
    const auto c = ps_compose_outer(a12, S(2, {0, -1, 1}));
    CHECK(c == from_poly(2, {0, oracle::composition_coefficient(a12, {0, -1, 1}, 1),
                             oracle::composition_coefficient(a12, {0, -1, 1}, 2)}));
    CHECK(valuation(c) == Valuation::at(1, 2));
}

TEST_CASE("valuation examples")
{
    CHECK(valuation(S(6, {0, 0, 0, 1, 0, 1})).to_string() == "3");
    CHECK(valuation(TruncatedSeries(10)).to_string() == ">=11");
    CHECK(valuation(TruncatedSeries(10)).lower_bound() == 11);
    CHECK_FALSE(valuation(TruncatedSeries(10)).finite());
    CHECK(real_part_valuation(TruncatedSeries::monomial(3, 1, GaussianRational::i())).to_string() == "1");
    CHECK(real_part_valuation(TruncatedSeries(3)).to_string() == ">=4");
    CHECK(real_part_valuation(TruncatedSeries::monomial(8, 4, GaussianRational(2, 3))).to_string() == "4");
    CHECK(valuation(S(3, {5})).to_string() == "0");
}

TEST_CASE("errors")
{
    CHECK_THROWS_AS(ps_add(S(2, {1}), S(3, {1})), TruncationMismatch);
    CHECK_THROWS_AS(ps_mul(S(2, {1}), S(3, {1})), TruncationMismatch);
    CHECK_THROWS_AS(TruncatedSeries(1, {1, 2, 3}), TruncationMismatch);
    CHECK_THROWS_AS(ps_compose_outer(R({1, 2}), S(2, {1, 1})), NonvanishingConstantTerm);
    CHECK_THROWS_AS(ps_compose_outer(R({1}), S(2, {0, 1})), TruncationMismatch);
    CHECK_THROWS_AS(valuation(TruncatedSeries(2)).order(), std::logic_error);
}

TEST_CASE("oracle equivalence on random inputs")
{
    Rng rng(2024);
    for (int trial = 0; trial < 150; ++trial) {
        const int K = static_cast<int>(rng.uniform(1, 8));
        const auto pa = oracle::random_poly(rng, static_cast<int>(rng.uniform(0, 8)), false);
        const auto pb = oracle::random_poly(rng, static_cast<int>(rng.uniform(0, 8)), false);
        const auto A = from_poly(K, pa), B = from_poly(K, pb);
        CHECK(ps_mul(A, B) == from_poly(K, oracle::mul(pa, pb)));
        const unsigned m = static_cast<unsigned>(rng.uniform(1, 5));
        CHECK(ps_pow(A, m) == from_poly(K, oracle::power(pa, m)));

        const auto ph = oracle::random_poly(rng, static_cast<int>(rng.uniform(1, 8)), true);
        std::vector<BigRational> a;
        for (int i = 0; i < K; ++i) {
            a.push_back(oracle::small_rational(rng));
        }
        const auto composed = ps_compose_outer(a, from_poly(K, ph));
        for (int k = 1; k <= K; ++k) {
            CHECK(composed[k] == oracle::composition_coefficient(a, ph, k));
        }
        CHECK(composed[0].is_zero());
    }
}

TEST_CASE("algebraic properties")
{
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const int K = 6;
        const auto f = from_poly(K, oracle::random_poly(rng, 6, true));
        const auto g = from_poly(K, oracle::random_poly(rng, 6, true));
        const auto h = from_poly(K, oracle::random_poly(rng, 6, true));
        // valuations add under multiplication (when the product stays within K)
        const auto vf = valuation(f), vg = valuation(g);
        if (vf.finite() && vg.finite() && vf.order() + vg.order() <= K) {
            CHECK(valuation(ps_mul(f, g)) == Valuation::at(vf.order() + vg.order(), K));
        }
        // composition is linear in the outer coefficients
        std::vector<BigRational> a, b, ab;
        for (int i = 0; i < K; ++i) {
            a.push_back(oracle::small_rational(rng));
            b.push_back(oracle::small_rational(rng));
            ab.push_back(a.back() + b.back());
        }
        CHECK(ps_compose_outer(ab, h) == ps_add(ps_compose_outer(a, h), ps_compose_outer(b, h)));
        // rescaling commutes with composition
        const BigRational lambda = oracle::small_rational(rng);
        CHECK(ps_rescale(ps_compose_outer(a, h), lambda) == ps_compose_outer(a, ps_rescale(h, lambda)));
        CHECK(ps_sub(ps_add(f, g), g) == f);
        CHECK(ps_mul(f, ps_add(g, h)) == ps_add(ps_mul(f, g), ps_mul(f, h)));
    }
}

TEST_CASE("truncation change")
{
    const auto s = S(3, {0, 1, 2, 3});
    CHECK(s.with_truncation(5) == S(5, {0, 1, 2, 3}));
    CHECK(s.with_truncation(2) == S(2, {0, 1, 2}));
    CHECK(ps_rescale(s, BigRational(1, 2)) == TruncatedSeries(3, {0, BigRational(1, 2), BigRational(1, 2), BigRational(3, 8)}));
}
