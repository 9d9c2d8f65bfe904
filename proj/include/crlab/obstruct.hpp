#pragma once

// Quantitative obstruction: normalizes a candidate curve, locates the pivot
// (m*, q), the threshold k0 and the first spike that blocks cancellation,
// and certifies a finite tangency order.
//
// For a normalized curve (all |coefficients| <= 1) with pivot coefficient
// alpha = alpha^q_{m*}, the coefficient of t^{k m*} in G, k = spike_hit, is
//   a^q_k alpha^k + (terms bounded by k^{2k} times the other a's) + gamma,
// and the spike inequality makes the first term dominate, so
// observed_order <= spike_hit * m*. The bound is asserted on every run.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crlab/hypersurface.hpp"
#include "crlab/random.hpp"

namespace crlab {

struct NormalizedCurve {
    Curve curve;
    BigRational scale{1};  // lambda = 2^-p
    int halvings = 0;      // p
    BigRational max_coeff_sq{0};
};

// Smallest p >= 0 such that t -> 2^-p t makes every |coefficient|^2 <= 1.
// Throws ConstantCurve.
NormalizedCurve normalize_curve(const Curve &curve);

struct CompositionBound {
    bool pass = true;
    int k = 0;
    int m_star = 0;
    BigInt envelope;                      // k^{4k}
    std::vector<BigRational> sums_abs_sq; // index m-1: |[t^{k m*}] h^m|^2
    std::optional<int> violating_m;
};

// Checks |sum_{n_1+..+n_m = k m*} alpha_{n_1}..alpha_{n_m}|^2 <= k^{4k} for
// m = 1..k, each sum read off as the t^{k m*} coefficient of h^m. The
// polynomial h is zero-extended when k m* exceeds its order. Requires
// k >= m_star >= 1.
CompositionBound composition_sum_bound(const TruncatedSeries &h, int k, int m_star);

struct ObstructionCertificate {
    // 1: all h_j = 0; 2: g = 0; 3: both present.
    int case_id = 0;
    std::optional<int> m_star;
    std::optional<int> q;
    std::optional<BigRational> alpha_q_msq;
    std::optional<int> k0;
    std::optional<int> spike_hit;
    Valuation observed_order = Valuation::beyond(0);
    std::optional<GaussianRational> leading_coeff;
    BigRational scale{1};
    bool bound_respected = false;
};

// Throws ConstantCurve, or TruncationTooSmall when no spike k_s assigned to
// q with k_s >= k0 has k_s * m* <= K.
ObstructionCertificate obstruction_certificate(const Curve &curve, const SequenceFamily &family);

// Random nonconstant curve with polynomial components of degree <= deg at
// order K. Coefficients have real and imaginary parts p/q, |p| <= q <= 8,
// redrawn until |c|^2 <= 1, so the curve is already normalized. The case
// (h = 0 / g = 0 / both present) is drawn first, 1:1:2.
Curve random_normalized_curve(Rng &rng, int n, int deg, int K);

struct BatchEntry {
    std::size_t index = 0;
    Curve curve;
    std::optional<ObstructionCertificate> certificate;
    std::string error;  // exception kind and message when certificate is empty
};

// Curves are drawn sequentially from Rng(seed) and certified in parallel;
// entries come back in draw order.
std::vector<BatchEntry> obstruction_batch(const SequenceFamily &family, std::uint64_t seed, int count, int deg,
                                          int K);

} // namespace crlab
