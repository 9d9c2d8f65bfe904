#include "crlab/series.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

#include "crlab/error.hpp"

namespace crlab {

namespace {

void require_same_order(const TruncatedSeries &a, const TruncatedSeries &b, const char *op)
{
    if (a.truncation_order() != b.truncation_order()) {
        throw TruncationMismatch(std::string(op) + ": truncation orders " + std::to_string(a.truncation_order())
                                 + " and " + std::to_string(b.truncation_order()) + " differ");
    }
}

int first_nonzero(const TruncatedSeries &s)
{
    const int K = s.truncation_order();
    for (int k = 0; k <= K; ++k) {
        if (!s[k].is_zero()) {
            return k;
        }
    }
    return K + 1;
}

} // namespace

int Valuation::order() const
{
    if (!order_) {
        throw std::logic_error("Valuation::order() on a series vanishing to its truncation order");
    }
    return *order_;
}

std::string Valuation::to_string() const
{
    if (order_) {
        return std::to_string(*order_);
    }
    return ">=" + std::to_string(truncation_ + 1);
}

TruncatedSeries::TruncatedSeries(int truncation_order)
{
    if (truncation_order < 0) {
        throw std::invalid_argument("TruncatedSeries: negative truncation order");
    }
    coeffs_.resize(static_cast<std::size_t>(truncation_order) + 1);
}

TruncatedSeries::TruncatedSeries(int truncation_order, std::vector<GaussianRational> coeffs)
    : TruncatedSeries(truncation_order)
{
    if (coeffs.size() > coeffs_.size()) {
        throw TruncationMismatch("TruncatedSeries: " + std::to_string(coeffs.size()) + " coefficients exceed order "
                                 + std::to_string(truncation_order));
    }
    std::move(coeffs.begin(), coeffs.end(), coeffs_.begin());
}

TruncatedSeries TruncatedSeries::monomial(int truncation_order, int degree, GaussianRational coeff)
{
    TruncatedSeries s(truncation_order);
    if (degree >= 0 && degree <= truncation_order) {
        s.coeffs_[static_cast<std::size_t>(degree)] = std::move(coeff);
    }
    return s;
}

bool TruncatedSeries::is_zero() const
{
    for (const auto &c : coeffs_) {
        if (!c.is_zero()) {
            return false;
        }
    }
    return true;
}

TruncatedSeries TruncatedSeries::with_truncation(int truncation_order) const
{
    TruncatedSeries out(truncation_order);
    const int upto = std::min(truncation_order, this->truncation_order());
    for (int k = 0; k <= upto; ++k) {
        out.coeffs_[static_cast<std::size_t>(k)] = (*this)[k];
    }
    return out;
}

TruncatedSeries ps_add(const TruncatedSeries &a, const TruncatedSeries &b)
{
    require_same_order(a, b, "ps_add");
    std::vector<GaussianRational> c(a.coeffs());
    for (std::size_t k = 0; k < c.size(); ++k) {
        c[k] += b.coeffs()[k];
    }
    return {a.truncation_order(), std::move(c)};
}

TruncatedSeries ps_sub(const TruncatedSeries &a, const TruncatedSeries &b)
{
    require_same_order(a, b, "ps_sub");
    std::vector<GaussianRational> c(a.coeffs());
    for (std::size_t k = 0; k < c.size(); ++k) {
        c[k] -= b.coeffs()[k];
    }
    return {a.truncation_order(), std::move(c)};
}

TruncatedSeries ps_scale(const TruncatedSeries &a, const GaussianRational &c)
{
    std::vector<GaussianRational> out;
    out.reserve(a.coeffs().size());
    for (const auto &x : a.coeffs()) {
        out.push_back(gr_mul(x, c));
    }
    return {a.truncation_order(), std::move(out)};
}

TruncatedSeries ps_mul(const TruncatedSeries &a, const TruncatedSeries &b)
{
    require_same_order(a, b, "ps_mul");
    const int K = a.truncation_order();
    const int va = first_nonzero(a);
    const int vb = first_nonzero(b);
    std::vector<GaussianRational> c(static_cast<std::size_t>(K) + 1);
    for (int i = va; i <= K - vb; ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        for (int j = vb; i + j <= K; ++j) {
            if (!b[j].is_zero()) {
                c[static_cast<std::size_t>(i + j)] += gr_mul(a[i], b[j]);
            }
        }
    }
    return {K, std::move(c)};
}

TruncatedSeries ps_pow(const TruncatedSeries &h, unsigned m)
{
    if (m == 0) {
        throw std::invalid_argument("ps_pow: exponent must be >= 1");
    }
    std::optional<TruncatedSeries> result;
    TruncatedSeries base = h;
    while (m > 0) {
        if (m & 1U) {
            result = result ? ps_mul(*result, base) : base;
        }
        m >>= 1;
        if (m > 0) {
            base = ps_mul(base, base);
        }
    }
    return *result;
}

TruncatedSeries ps_compose_outer(std::span<const BigRational> a, const TruncatedSeries &h)
{
    const int K = h.truncation_order();
    if (!h[0].is_zero()) {
        throw NonvanishingConstantTerm("ps_compose_outer: inner series has nonzero constant term "
                                       + to_string(h[0]));
    }
    if (a.size() < static_cast<std::size_t>(K)) {
        throw TruncationMismatch("ps_compose_outer: " + std::to_string(a.size()) + " outer coefficients for order "
                                 + std::to_string(K));
    }
    if (K == 0 || h.is_zero()) {
        return TruncatedSeries(K);
    }
    // Horner: h (a_1 + h (a_2 + ... + h a_K)). Each h-power term is the
    // coefficient extraction from h^m, never an enumeration of compositions.
    TruncatedSeries acc = TruncatedSeries::monomial(K, 0, a[static_cast<std::size_t>(K) - 1]);
    for (int m = K - 1; m >= 1; --m) {
        acc = ps_mul(h, acc);
        std::vector<GaussianRational> c(acc.coeffs());
        c[0] += GaussianRational(a[static_cast<std::size_t>(m) - 1]);
        acc = TruncatedSeries(K, std::move(c));
    }
    return ps_mul(h, acc);
}

TruncatedSeries ps_rescale(const TruncatedSeries &h, const BigRational &lambda)
{
    std::vector<GaussianRational> c(h.coeffs());
    BigRational factor = 1;
    for (auto &x : c) {
        x.re *= factor;
        x.im *= factor;
        factor *= lambda;
    }
    return {h.truncation_order(), std::move(c)};
}

Valuation valuation(const TruncatedSeries &s)
{
    const int k = first_nonzero(s);
    if (k > s.truncation_order()) {
        return Valuation::beyond(s.truncation_order());
    }
    return Valuation::at(k, s.truncation_order());
}

Valuation real_part_valuation(const TruncatedSeries &g) { return valuation(g); }

} // namespace crlab
