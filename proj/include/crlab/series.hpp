#pragma once

// Truncated univariate power series over Q(i).
//
// A TruncatedSeries of order K stores the coefficients of t^0 .. t^K. Every
// operation truncates eagerly; binary operations require equal orders.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crlab/arith.hpp"

namespace crlab {

// Vanishing order of a truncated series. Either a concrete degree k <= K or
// the tagged value ">= K+1" meaning every stored coefficient is zero.
class Valuation {
public:
    static Valuation at(int order, int truncation) { return Valuation(order, truncation); }
    static Valuation beyond(int truncation) { return Valuation(std::nullopt, truncation); }

    bool finite() const { return order_.has_value(); }
    // Throws std::logic_error when !finite().
    int order() const;
    int truncation() const { return truncation_; }
    // Lower bound that is always valid: the order, or K+1.
    int lower_bound() const { return order_ ? *order_ : truncation_ + 1; }

    // "3" or ">=11".
    std::string to_string() const;

    friend bool operator==(const Valuation &, const Valuation &) = default;

private:
    Valuation(std::optional<int> order, int truncation) : order_(order), truncation_(truncation) {}

    std::optional<int> order_;
    int truncation_;
};

class TruncatedSeries {
public:
    // The zero series of order K.
    explicit TruncatedSeries(int truncation_order);
    // Shorter coefficient lists are zero-padded (polynomial input); longer
    // ones are rejected with TruncationMismatch.
    TruncatedSeries(int truncation_order, std::vector<GaussianRational> coeffs);

    static TruncatedSeries monomial(int truncation_order, int degree, GaussianRational coeff = 1);

    int truncation_order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const GaussianRational &operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
    const std::vector<GaussianRational> &coeffs() const { return coeffs_; }
    bool is_zero() const;

    // Same polynomial data at a different order: zero-extends or truncates.
    TruncatedSeries with_truncation(int truncation_order) const;

    friend bool operator==(const TruncatedSeries &, const TruncatedSeries &) = default;

private:
    std::vector<GaussianRational> coeffs_;
};

TruncatedSeries ps_add(const TruncatedSeries &a, const TruncatedSeries &b);
TruncatedSeries ps_sub(const TruncatedSeries &a, const TruncatedSeries &b);
TruncatedSeries ps_scale(const TruncatedSeries &a, const GaussianRational &c);
TruncatedSeries ps_mul(const TruncatedSeries &a, const TruncatedSeries &b);
// h^m by repeated squaring, m >= 1.
TruncatedSeries ps_pow(const TruncatedSeries &h, unsigned m);

// sum_{m=1}^{K} a_m h^m where a[0] holds a_1. Needs at least K entries of
// `a` and h(0) = 0; the coefficient of t^k is
//   sum_{m<=k} a_m sum_{n_1+...+n_m=k} alpha_{n_1} ... alpha_{n_m}.
TruncatedSeries ps_compose_outer(std::span<const BigRational> a, const TruncatedSeries &h);

// Substitutes t -> lambda t: coefficient k is multiplied by lambda^k.
TruncatedSeries ps_rescale(const TruncatedSeries &h, const BigRational &lambda);

Valuation valuation(const TruncatedSeries &s);
// Vanishing order of (t, tbar) -> Re G(t). Re(c t^k) is not identically
// zero for c != 0, so this coincides with valuation(G).
Valuation real_part_valuation(const TruncatedSeries &g);

} // namespace crlab
