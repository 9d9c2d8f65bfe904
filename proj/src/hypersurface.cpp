#include "crlab/hypersurface.hpp"

#include <stdexcept>
#include <string>

#include "crlab/error.hpp"

namespace crlab {

bool Curve::h_all_zero() const
{
    for (const auto &s : h) {
        if (!s.is_zero()) {
            return false;
        }
    }
    return true;
}

bool Curve::is_constant() const { return g.is_zero() && h_all_zero(); }

void validate_curve(const Curve &curve)
{
    const int K = curve.K();
    auto check = [K](const TruncatedSeries &s, const std::string &name) {
        if (s.truncation_order() != K) {
            throw TruncationMismatch("curve component " + name + " has order " + std::to_string(s.truncation_order())
                                     + ", expected " + std::to_string(K));
        }
        if (!s[0].is_zero()) {
            throw NonvanishingConstantTerm("curve component " + name + " does not pass through the origin");
        }
    };
    check(curve.g, "g");
    for (std::size_t j = 0; j < curve.h.size(); ++j) {
        check(curve.h[j], "h[" + std::to_string(j) + "]");
    }
}

TruncatedSeries curve_compose(const Curve &curve, const SequenceFamily &family)
{
    validate_curve(curve);
    if (curve.n() != family.n) {
        throw std::invalid_argument("curve has " + std::to_string(curve.n()) + " z-components, family has n = "
                                    + std::to_string(family.n));
    }
    if (curve.K() > family.M_max) {
        throw TruncationMismatch("curve order " + std::to_string(curve.K()) + " exceeds family M_max = "
                                 + std::to_string(family.M_max));
    }
    TruncatedSeries G = curve.g;
    for (int j = 1; j <= family.n; ++j) {
        const auto &hj = curve.h[static_cast<std::size_t>(j - 1)];
        if (hj.is_zero()) {
            continue;
        }
        const auto a = family.outer_coefficients(j);
        G = ps_add(G, ps_compose_outer(a, hj));
    }
    return G;
}

TangencyResult tangency_order(const Curve &curve, const SequenceFamily &family)
{
    validate_curve(curve);
    if (curve.is_constant()) {
        throw ConstantCurve("curve vanishes identically up to order " + std::to_string(curve.K()));
    }
    TangencyResult out;
    out.composed = curve_compose(curve, family);
    out.order = real_part_valuation(out.composed);
    if (out.order.finite()) {
        out.first_nonzero_coeff = out.composed[out.order.order()];
    }
    return out;
}

Curve xm_slice_curve(const SequenceFamily &family, int j, int m, int K)
{
    Curve c;
    c.h.assign(static_cast<std::size_t>(family.n), TruncatedSeries(K));
    c.h[static_cast<std::size_t>(j - 1)] = TruncatedSeries::monomial(K, 1);
    std::vector<GaussianRational> g(static_cast<std::size_t>(K) + 1);
    for (int k = 1; k <= std::min(m, K); ++k) {
        g[static_cast<std::size_t>(k)] = GaussianRational(BigRational(-family.a_at(j, k)));
    }
    c.g = TruncatedSeries(K, std::move(g));
    return c;
}

XmCheckResult xm_tangency_check(const SequenceFamily &family, int m)
{
    if (m < 0 || m > family.M_max - 1) {
        throw std::out_of_range("xm_tangency_check: m must lie in [0, M_max - 1]");
    }
    XmCheckResult res;
    res.m = m;
    res.pass = true;
    const int K = m + 1;
    for (int j = 1; j <= family.n; ++j) {
        const auto t = tangency_order(xm_slice_curve(family, j, m, K), family);
        XmSlice slice;
        slice.j = j;
        slice.order = t.order;
        slice.coeff = t.first_nonzero_coeff;
        slice.pass = t.order.finite() && t.order.order() == m + 1
                     && *t.first_nonzero_coeff == GaussianRational(BigRational(family.a_at(j, m + 1)));
        res.pass = res.pass && slice.pass;
        res.slices.push_back(std::move(slice));
    }
    return res;
}

double rho_eval(std::span<const Complex> z, Complex w, const SurfaceModel &model, int M)
{
    if (static_cast<int>(z.size()) != model.n()) {
        throw std::invalid_argument("rho_eval: expected " + std::to_string(model.n()) + " z-coordinates");
    }
    double s = w.real();
    for (int j = 1; j <= model.n(); ++j) {
        s += eval_f_trunc(j, z[static_cast<std::size_t>(j - 1)], model, M);
    }
    return s;
}

} // namespace crlab
