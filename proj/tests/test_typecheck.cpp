#include <doctest.h>

#include "crlab/typecheck.hpp"
#include "oracles.hpp"

using namespace crlab;

namespace {

const GaussianRational kHalf(BigRational(1, 2));

ModelFunction abs_z4()
{
    ModelFunction F(1);
    F.add({2}, {2}, 1);
    return F;
}

// Re(c z^alpha) = (c/2) z^alpha + (conj c / 2) zbar^alpha
void add_re(ModelFunction &F, MultiIndex alpha, const GaussianRational &c)
{
    const MultiIndex zero(alpha.size(), 0);
    F.add(alpha, zero, kHalf * c);
    F.add(zero, alpha, kHalf * c.conj());
}

ModelFunction sum_of(const ModelFunction &a, const ModelFunction &b)
{
    ModelFunction out = a;
    for (const auto &[key, c] : b.terms()) {
        out.add(key.first, key.second, c);
    }
    return out;
}

} // namespace

TEST_CASE("pure and mixed parts")
{
    ModelFunction re_z3(1);
    add_re(re_z3, {3}, 1);
    auto split = pluriharmonic_split(re_z3);
    CHECK(split.mixed.terms().empty());
    CHECK(split.pure == re_z3);

    split = pluriharmonic_split(abs_z4());
    CHECK(split.pure.terms().empty());
    REQUIRE(split.mixed.terms().size() == 1);
    CHECK(split.mixed.coeff({2}, {2}) == GaussianRational(1));

    ModelFunction F(2);
    add_re(F, {2, 0}, 1);
    F.add({1, 1}, {1, 1}, 1);
    split = pluriharmonic_split(F);
    CHECK(split.pure.terms().size() == 2);
    CHECK(split.mixed.terms().size() == 1);
    CHECK(sum_of(split.pure, split.mixed) == F);
    CHECK(F.is_real());
}

TEST_CASE("Bloom-Graham type")
{
    CHECK(bg_type(abs_z4(), 20).to_string() == "4");

    ModelFunction F(1);
    add_re(F, {5}, 1);
    F.add({3}, {3}, 1);
    CHECK(bg_type(F, 20).to_string() == "6");

    const auto f = gen_sequences(2, {3, 6, 9}, 20);
    for (int K : {5, 12, 20}) {
        const auto model = model_from_family(f, K);
        CHECK(model.is_real());
        const auto bg = bg_type(model, K);
        CHECK(bg.to_string() == ">=" + std::to_string(K + 1));
        // the absorbing graph is -sum_m a^j_m z_j^m
        CHECK(bg.graph.at({1, 0}) == GaussianRational(-1));
        CHECK(bg.graph.at({0, 3}) == GaussianRational(BigRational(-f.a_at(2, 3))));
    }
}

TEST_CASE("Bloom-Graham type ignores pure terms")
{
    Rng rng(31);
    ModelFunction base(2);
    base.add({1, 0}, {0, 2}, GaussianRational(1, 1));
    base.add({0, 2}, {1, 0}, GaussianRational(1, -1));
    base.add({1, 1}, {1, 1}, 3);
    const auto expected = bg_type(base, 10).type;
    CHECK(expected == 3);
    for (int trial = 0; trial < 50; ++trial) {
        ModelFunction F = base;
        for (int k = 0; k < 4; ++k) {
            MultiIndex a{static_cast<int>(rng.uniform(0, 4)), static_cast<int>(rng.uniform(0, 4))};
            if (a[0] + a[1] == 0) {
                continue;
            }
            add_re(F, a, oracle::small_gaussian(rng));
        }
        CHECK(bg_type(F, 10).type == expected);
    }
}

TEST_CASE("D'Angelo lower bounds")
{
    auto d = dangelo_lower_bound(abs_z4(), 4, 20);
    CHECK_FALSE(d.infinite);
    CHECK(d.to_string() == "4");
    REQUIRE(d.witness.has_value());
    CHECK(d.witness->nu_gamma == 1);
    CHECK(*d.witness->nu_r == 4);
    CHECK(d.witness->z_exp == std::vector<int>{1});

    ModelFunction cusp(3);
    // |z1^2 - z2^3|^2
    cusp.add({2, 0, 0}, {2, 0, 0}, 1);
    cusp.add({2, 0, 0}, {0, 3, 0}, -1);
    cusp.add({0, 3, 0}, {2, 0, 0}, -1);
    cusp.add({0, 3, 0}, {0, 3, 0}, 1);
    const auto w = evaluate_monomial_curve(cusp, 20, {1, 1, 0}, {3, 2, 1}, true);
    CHECK(w.nu_gamma == 2);
    CHECK_FALSE(w.nu_r.has_value());
    d = dangelo_lower_bound(cusp, 3, 20);
    CHECK(d.infinite);
    CHECK(d.to_string() == ">=21");
}

TEST_CASE("infinite Bloom-Graham type forces an infinite lower bound")
{
    const auto f = gen_sequences(2, {3, 6}, 20);
    const auto model = model_from_family(f, 20);
    const auto r = type_report(model, 3, 20);
    CHECK(r.bg.to_string() == ">=21");
    CHECK(r.dangelo.to_string() == ">=21");
    REQUIRE(r.dangelo.witness.has_value());
    CHECK(r.dangelo.witness->kind == "graph-slice");

    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        ModelFunction F(2);
        for (int k = 0; k < 5; ++k) {
            MultiIndex a{static_cast<int>(rng.uniform(0, 5)), static_cast<int>(rng.uniform(0, 5))};
            if (a[0] + a[1] == 0) {
                continue;
            }
            add_re(F, a, oracle::small_gaussian(rng));
        }
        if (F.terms().empty()) {
            continue;
        }
        const auto rep = type_report(F, 2, 12);
        CHECK_FALSE(rep.bg.type.has_value());
        CHECK(rep.dangelo.infinite);
    }
}

TEST_CASE("model reality")
{
    ModelFunction F(1);
    F.add({1}, {2}, GaussianRational(1, 1));
    CHECK_FALSE(F.is_real());
    F.add({2}, {1}, GaussianRational(1, -1));
    CHECK(F.is_real());
    F.add({2}, {1}, GaussianRational(-1, 1));
    CHECK(F.terms().size() == 1);
}
