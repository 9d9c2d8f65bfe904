#pragma once

// rho = Re(w) + f_1(z_1) + ... + f_n(z_n), the graphs X_m, and exact
// tangency orders of holomorphic curve germs.
//
// Every f_j has Taylor series Re(sum_m a^j_m z^m), so the formal expansion
// of rho o gamma is Re(G) with the single holomorphic series
//   G(t) = g(t) + sum_j sum_m a^j_m h_j(t)^m.
// Tangency is read off G exactly; nothing here samples rho numerically
// except rho_eval.

#include <optional>
#include <span>
#include <vector>

#include "crlab/construct.hpp"
#include "crlab/series.hpp"

namespace crlab {

// gamma = (h_1, ..., h_n; g), all components at a common truncation order
// with zero constant term.
struct Curve {
    std::vector<TruncatedSeries> h;
    TruncatedSeries g{0};

    int K() const { return g.truncation_order(); }
    int n() const { return static_cast<int>(h.size()); }
    // Every component vanishes identically up to K.
    bool is_constant() const;
    bool h_all_zero() const;

    friend bool operator==(const Curve &, const Curve &) = default;
};

// Throws TruncationMismatch (orders differ) or NonvanishingConstantTerm.
void validate_curve(const Curve &curve);

struct TangencyResult {
    Valuation order = Valuation::beyond(0);
    std::optional<GaussianRational> first_nonzero_coeff;
    TruncatedSeries composed{0};
};

// G(t) truncated at the curve order. Requires K <= M_max and n matching.
TruncatedSeries curve_compose(const Curve &curve, const SequenceFamily &family);

// Vanishing order of rho o gamma. Throws ConstantCurve when every component
// vanishes up to K.
TangencyResult tangency_order(const Curve &curve, const SequenceFamily &family);

// Slice of X_m through the z_j axis: h_j = t, other h = 0,
// g = -sum_{k<=m} a^j_k t^k, at truncation order K.
Curve xm_slice_curve(const SequenceFamily &family, int j, int m, int K);

struct XmSlice {
    int j = 0;
    Valuation order = Valuation::beyond(0);
    std::optional<GaussianRational> coeff;
    bool pass = false;
};

struct XmCheckResult {
    int m = 0;
    bool pass = false;
    std::vector<XmSlice> slices;
};

// Each slice must have tangency order exactly m + 1 with leading
// coefficient a^j_{m+1}. Requires 0 <= m <= M_max - 1.
XmCheckResult xm_tangency_check(const SequenceFamily &family, int m);

// Re(w) + sum_j f_j(z_j) with f_j truncated at M.
double rho_eval(std::span<const Complex> z, Complex w, const SurfaceModel &model, int M);

} // namespace crlab
