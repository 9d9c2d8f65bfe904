#include <doctest.h>

#include "crlab/arith.hpp"
#include "crlab/error.hpp"
#include "oracles.hpp"

using namespace crlab;

namespace {
BigRational q(const char *s) { return parse_rational(s); }
}

TEST_CASE("gaussian addition")
{
    CHECK(gr_add({q("1/2")}, {q("1/3")}) == GaussianRational(q("5/6")));
    GaussianRational x{q("-7/3"), q("2/9")};
    CHECK(gr_add(GaussianRational(), x) == x);
    CHECK(gr_add({q("1/3"), q("1/6")}, {q("-1/3"), q("1/3")}) == GaussianRational(0, q("1/2")));
}

TEST_CASE("gaussian multiplication")
{
    CHECK(gr_mul(GaussianRational::i(), GaussianRational::i()) == GaussianRational(-1));
    GaussianRational x{q("5/4"), q("-3")};
    CHECK(gr_mul(GaussianRational(1), x) == x);
    CHECK(gr_mul({q("1/2"), q("1/2")}, {q("1/2"), q("-1/2")}) == GaussianRational(q("1/2")));
}

TEST_CASE("modulus squared")
{
    CHECK(gr_abs_sq(GaussianRational()) == 0);
    CHECK(gr_abs_sq({q("3/5"), q("4/5")}) == 1);
    // 1/4 + 1/9
    const BigRational expected = BigRational(1, 4) + BigRational(1, 9);
    CHECK(gr_abs_sq({q("1/2"), q("1/3")}) == expected);
    CHECK(expected == q("13/36"));
}

TEST_CASE("field axioms on random elements")
{
    Rng rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const auto a = oracle::small_gaussian(rng);
        const auto b = oracle::small_gaussian(rng);
        const auto c = oracle::small_gaussian(rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == GaussianRational());
        CHECK(gr_abs_sq(a * b) == gr_abs_sq(a) * gr_abs_sq(b));
        CHECK(a * a.conj() == GaussianRational(gr_abs_sq(a)));
        // canonical form: denominators positive, gcd 1
        const auto s = a * b + c;
        CHECK(sgn(s.re.get_den()) > 0);
        BigInt g;
        mpz_gcd(g.get_mpz_t(), s.re.get_num_mpz_t(), s.re.get_den_mpz_t());
        CHECK((g == 1 || s.re == 0));
    }
}

TEST_CASE("parsing and printing")
{
    CHECK(parse_rational("6/4") == BigRational(3, 2));
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational("-10/5")) == "-2");
    CHECK(to_string(parse_rational("3/-6")) == "-1/2");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK(parse_integer("123456789012345678901234567890") == BigInt("123456789012345678901234567890"));
    CHECK_THROWS_AS(parse_integer("1.5"), ParseError);
}

TEST_CASE("integer roots and ceilings")
{
    CHECK(iroot_ceil(69 * 69, 2) == 69);
    CHECK(iroot_ceil(69 * 69 + 1, 2) == 70);
    CHECK(iroot_ceil(0, 3) == 0);
    CHECK(iroot_ceil(1, 5) == 1);
    CHECK(iroot_ceil(28, 3) == 4);
    CHECK(crlab::ceil(BigRational(7, 2)) == 4);
    CHECK(crlab::ceil(BigRational(-7, 2)) == -3);
    CHECK(crlab::ceil(BigRational(4)) == 4);
    for (unsigned long x = 0; x < 200; ++x) {
        for (unsigned long k = 1; k <= 4; ++k) {
            const BigInt e = iroot_ceil(x, k);
            BigInt ek, em1k;
            mpz_pow_ui(ek.get_mpz_t(), e.get_mpz_t(), k);
            CHECK(ek >= x);
            if (e > 0) {
                BigInt em1 = e - 1;
                mpz_pow_ui(em1k.get_mpz_t(), em1.get_mpz_t(), k);
                CHECK(em1k < x);
            }
        }
    }
}

TEST_CASE("log of huge integers")
{
    BigInt big;
    mpz_ui_pow_ui(big.get_mpz_t(), 10, 2000);
    CHECK(log_of(big) == doctest::Approx(2000 * std::log(10.0)).epsilon(1e-14));
    CHECK(log_of(BigInt(1)) == 0.0);
}

TEST_CASE("integer powers")
{
    CHECK(pow(GaussianRational::i(), 4) == GaussianRational(1));
    CHECK(pow(GaussianRational(1, 1), 2) == GaussianRational(0, 2));
    CHECK(pow(GaussianRational(q("2/3")), 0) == GaussianRational(1));
}
